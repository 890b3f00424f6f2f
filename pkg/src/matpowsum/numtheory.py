"""Small integer helpers: trial-division factoring and prime-power tests."""

from __future__ import annotations


def factorize(n: int) -> dict[int, int]:
    """Return the prime factorization of ``n >= 1`` as ``{p: e}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m``, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, m),) = f.items()
    return p, m


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))
