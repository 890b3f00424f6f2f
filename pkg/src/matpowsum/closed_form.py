"""Closed-form values of power sums over finite rings.

Every function returns its value inside the ring it lives in, so ``-1`` in
characteristic 2 is simply ``1``.  ``predict_ring_matrix_sum`` is the only
function whose answer may rest on unproved statements; it says so through
``conjecture_dependent``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .builtins import gaussian, gf, quaternion, zn
from .numtheory import factorize, is_prime, prime_power
from .ring import (
    Element,
    RingSpec,
    elem_neg,
    elem_scale,
    ensure_valid,
    find_order2_element,
    find_unit,
    invariant_factors,
    is_commutative,
    is_cyclic_unital,
    is_field,
    mat_scalar,
    mat_zero,
    zero,
)

MAX_FACTOR_N = 10**6
EXCEPTIONAL_K_MOD_6 = (0, 1, 5)


@dataclass
class ClosedFormResult:
    value: Any  # Element or (d, d, r) array
    case_label: str
    conjecture_dependent: bool
    ring: RingSpec
    meta: dict = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return not np.any(np.asarray(self.value))

    def to_dict(self) -> dict:
        value = np.asarray(self.value).tolist()
        return {
            "ring": self.ring.name,
            "case": self.case_label,
            "conjecture_dependent": self.conjecture_dependent,
            "value": value,
            **({"meta": self.meta} if self.meta else {}),
        }


def _exceptional_k(k: int) -> bool:
    return k > 1 and k % 6 in EXCEPTIONAL_K_MOD_6


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


# --- scalar sums --------------------------------------------------------------

def field_scalar_sum(q: int, k: int) -> ClosedFormResult:
    _check_k(k)
    pm = prime_power(q)
    if pm is None:
        raise ValueError(f"{q} is not a prime power")
    ring = gf(*pm)
    if k % (q - 1) == 0:
        return ClosedFormResult(elem_neg(ring, ring.unit), "q-1 divides k", False, ring)
    return ClosedFormResult(zero(ring), "otherwise", False, ring)


def zn_scalar_sum(n: int, k: int) -> ClosedFormResult:
    _check_k(k)
    if not 2 <= n <= MAX_FACTOR_N:
        raise ValueError(f"n must lie in [2, {MAX_FACTOR_N}]")
    ring = zn(n)
    if k % 2 == 0 or k == 1 or n % 4 != 0:
        primes = [p for p in factorize(n) if k % (p - 1) == 0]
        value = -sum(n // p for p in primes) % n
        return ClosedFormResult((value,), "sum over primes p | n with p-1 | k", False, ring, {"primes": primes})
    return ClosedFormResult((0,), "k odd > 1 and 4 | n", False, ring)


def gaussian_primes(k: int, n: int) -> list[int]:
    """Primes p with p || n, p^2 - 1 | k and p = 3 mod 4."""
    return [p for p, e in factorize(n).items() if e == 1 and p % 4 == 3 and k % (p * p - 1) == 0]


def gaussian_scalar_sum(n: int, k: int) -> ClosedFormResult:
    _check_k(k)
    if not 2 <= n <= MAX_FACTOR_N:
        raise ValueError(f"n must lie in [2, {MAX_FACTOR_N}]")
    ring = gaussian(n)
    primes = gaussian_primes(k, n)
    if k > 1 and k % 2 == 1 and n % 4 == 2:
        return ClosedFormResult((n // 2, n // 2), "k > 1 odd and n = 2 mod 4", False, ring, {"P": primes})
    value = -sum((n // p) ** 2 for p in primes) % n
    return ClosedFormResult((value, 0), "sum over P(k, n)", False, ring, {"P": primes})


def quaternion_sum(n: int, l: int) -> ClosedFormResult:
    _check_k(l)
    ring = quaternion(n)
    return ClosedFormResult(zero(ring), "always zero", False, ring)


# --- matrix sums ----------------------------------------------------------------

def field_matrix_sum(q: int, d: int, k: int) -> ClosedFormResult:
    _check_k(k)
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        res = field_scalar_sum(q, k)
        res.value = mat_scalar(res.ring, 1, res.value)
        return res
    pm = prime_power(q)
    if pm is None:
        raise ValueError(f"{q} is not a prime power")
    ring = gf(*pm)
    if q == 2 and d == 2 and _exceptional_k(k):
        return ClosedFormResult(mat_scalar(ring, 2, ring.unit), "q = d = 2, 1 < k = -1,0,1 mod 6", False, ring)
    return ClosedFormResult(mat_zero(ring, d), "zero", False, ring)


def zn_matrix_sum(n: int, d: int, k: int) -> ClosedFormResult:
    _check_k(k)
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        res = zn_scalar_sum(n, k)
        res.value = mat_scalar(res.ring, 1, res.value)
        return res
    if n < 2:
        raise ValueError("n must be >= 2")
    ring = zn(n)
    if d == 2 and n % 4 == 2 and _exceptional_k(k):
        return ClosedFormResult(mat_scalar(ring, 2, (n // 2,)), "d = 2, n = 2 mod 4, 1 < k = 0,1,5 mod 6", False, ring)
    return ClosedFormResult(mat_zero(ring, d), "zero", False, ring)


def oeis_a017593_nonzero(n: int) -> bool:
    """Whether ``S_n^2(n)`` is nonzero mod n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n % 12 == 6


# --- exponent sums as printed -----------------------------------------------------

@dataclass(frozen=True)
class ExponentProfile:
    p: int
    s: int
    betas: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(int(b) for b in self.betas))
        if not is_prime(self.p) or self.s < 1 or not self.betas or min(self.betas) < 0:
            raise ValueError(f"invalid exponent profile {self}")

    @property
    def tau(self) -> int:
        return len(self.betas)

    @property
    def modulus(self) -> int:
        return self.p**self.s

    @property
    def ones(self) -> int:
        return sum(1 for b in self.betas if b == 1)

    @property
    def evens(self) -> int:
        return sum(1 for b in self.betas if b > 0 and b % 2 == 0)


@dataclass(frozen=True)
class PrintedExponentSum:
    value: int
    modulus: int
    branch: str
    # the p = 2 statement is evaluated verbatim but known not to match brute force
    applicable: bool


def printed_scalar_exponent_sum(profile: ExponentProfile) -> PrintedExponentSum:
    p, s, betas = profile.p, profile.s, profile.betas
    m = profile.modulus
    if p != 2:
        if 0 in betas:
            return PrintedExponentSum(0, m, "some beta = 0", True)
        if all(b % (p - 1) == 0 for b in betas):
            return PrintedExponentSum((-(p ** (s - 1))) ** profile.tau % m, m, "p-1 divides every beta", True)
        return PrintedExponentSum(0, m, "otherwise", True)
    if 0 in betas:
        return PrintedExponentSum(0, m, "some beta = 0", False)
    if s == 1:
        return PrintedExponentSum(1 % m, m, "s = 1", False)
    if any(b > 1 and b % 2 for b in betas):
        return PrintedExponentSum(0, m, "some beta > 1 odd", False)
    value = (-1) ** profile.ones * (2 ** (s - 1)) ** profile.evens % m
    return PrintedExponentSum(value, m, "every beta is 1 or even", False)


# --- zero guarantees for Z/p^s-modules ------------------------------------------

@dataclass(frozen=True)
class ZeroGuarantee:
    guaranteed: bool
    which: str
    p: int
    exponents: tuple[int, ...]
    d: int
    k: int

    @property
    def r(self) -> int:
        return len(self.exponents)


def zero_guarantee(p: int, exponents: Sequence[int], d: int, k: int) -> ZeroGuarantee:
    """Whether a ring of characteristic p^s whose minimal additive generators
    have orders ``p^s_1, ..., p^s_r`` is proved to have ``S_k^d(R) = 0``."""
    exponents = tuple(int(s) for s in exponents)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not exponents or min(exponents) < 1 or any(a < b for a, b in zip(exponents, exponents[1:])):
        raise ValueError(f"exponents must be non-increasing and >= 1, got {exponents}")
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    r = len(exponents)
    rd2 = r * d * d
    free = len(set(exponents)) == 1
    prefix = "free" if free else "nonfree"
    low = exponents[-1]
    if p % 2:
        if low > 1:
            which = f"{prefix}-odd-i"
        elif k < rd2 * (p - 1) or k % (p - 1):
            which = f"{prefix}-odd-ii"
        else:
            which = "none"
    else:
        if low > 1 and (k <= rd2 or (k + rd2) % 2 == 0):
            which = f"{prefix}-2-i"
        elif low == 1 and k < rd2:
            which = f"{prefix}-2-ii"
        else:
            which = "none"
    return ZeroGuarantee(which != "none", which, p, exponents, d, k)


# --- direct products and the general prediction --------------------------------------

def combine_direct_product(spec1: RingSpec, res1: np.ndarray, spec2: RingSpec, res2: np.ndarray) -> np.ndarray:
    """``S_k^d(R_1 x R_2)`` from the factors' sums, as a matrix over the product ring."""
    res1, res2 = np.asarray(res1), np.asarray(res2)
    if res1.shape[:2] != res2.shape[:2] or res1.shape[0] != res1.shape[1]:
        raise ValueError(f"dimension mismatch {res1.shape} vs {res2.shape}")
    d2 = res1.shape[0] ** 2
    f1 = np.array([pow(spec2.card, d2, m) for m in spec1.orders], dtype=np.int64)
    f2 = np.array([pow(spec1.card, d2, m) for m in spec2.orders], dtype=np.int64)
    a = res1 * f1 % np.array(spec1.orders, dtype=np.int64)
    b = res2 * f2 % np.array(spec2.orders, dtype=np.int64)
    return np.concatenate([a, b], axis=2)


def proof_of_zero_or_formula(spec: RingSpec, d: int, k: int) -> str | None:
    """Name of the proved result covering ``S_k^d(spec)``, if any."""
    if is_cyclic_unital(spec):
        return "Z/n theorem"
    if is_field(spec):
        return "finite field theorem"
    inv = invariant_factors(spec)
    if inv is not None:
        g = zero_guarantee(inv[0], inv[1], d, k)
        if g.guaranteed:
            return f"zero guarantee {g.which}"
    return None


def final_theorem_pattern(spec: RingSpec, d: int, k: int) -> tuple[np.ndarray, str, dict]:
    """``diag(e, e)`` when d = 2, card(R) = 2 mod 4, 1 < k = -1,0,1 mod 6 and the
    unique e != 0 with 2e = 0 is idempotent; zero otherwise.  No commutativity
    check, so the non-commutative probe can compare against it."""
    e = find_order2_element(spec)
    meta: dict = {}
    if e is not None and e.unique:
        meta["e"] = list(e.element)
        meta["e_idempotent"] = e.idempotent
    nonzero = (
        d == 2
        and spec.card % 4 == 2
        and _exceptional_k(k)
        and e is not None
        and e.unique
        and e.idempotent
    )
    if nonzero:
        return mat_scalar(spec, 2, e.element), "diag(e,e)", meta
    return mat_zero(spec, d), "zero", meta


def predict_ring_matrix_sum(spec: RingSpec, d: int, k: int) -> ClosedFormResult:
    """Predicted ``S_k^d(R)`` for a commutative ring; see ``final_theorem_pattern``."""
    _check_k(k)
    if d < 2:
        raise ValueError("predictions are for d >= 2")
    ensure_valid(spec)
    if not is_commutative(spec):
        raise ValueError(f"{spec.name} is not commutative; no prediction is made for non-commutative rings")
    value, label, meta = final_theorem_pattern(spec, d, k)
    proof = proof_of_zero_or_formula(spec, d, k)
    if proof:
        meta["proof"] = proof
    return ClosedFormResult(value, label, proof is None, spec, meta)


def unit_multiple(spec: RingSpec, c: int) -> Element:
    """``c * 1_R`` for unital rings."""
    u = find_unit(spec)
    if u is None:
        raise ValueError(f"{spec.name} has no unit")
    return elem_scale(spec, u, c)
