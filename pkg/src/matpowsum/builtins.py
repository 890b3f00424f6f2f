"""Builtin ring families.

Every builtin is named by the expression that rebuilds it, e.g.
``direct_product(null_ring(2),zn(3))``, and ``parse_ring`` reads such
expressions back.
"""

from __future__ import annotations

import ast
import itertools

from .numtheory import is_prime, prime_power
from .ring import RingSpec, ensure_valid


def _table(r: int, rule) -> tuple:
    return tuple(tuple(tuple(rule(i, j)) for j in range(r)) for i in range(r))


def _basis(r: int, i: int, c: int = 1) -> list[int]:
    v = [0] * r
    v[i] = c
    return v


def zn(n: int) -> RingSpec:
    if n < 2:
        raise ValueError(f"zn needs n >= 2, got {n}")
    return ensure_valid(RingSpec(f"zn({n})", (n,), (((1,),),), True, (1,)))


def null_ring(m: int) -> RingSpec:
    if m < 2:
        raise ValueError(f"null_ring needs m >= 2, got {m}")
    return ensure_valid(RingSpec(f"null_ring({m})", (m,), (((0,),),), True, None))


# --- polynomials over F_p, coefficient lists low degree first ----------------

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        q = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _monic(p: int, deg: int):
    """Monic polynomials of degree ``deg`` in increasing base-p value."""
    for tail in itertools.product(range(p), repeat=deg):
        yield list(reversed(tail)) + [1]


def is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    deg = len(f) - 1
    for dd in range(1, deg // 2 + 1):
        for g in _monic(p, dd):
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Candidates are ordered by ``(a_{m-1}, ..., a_0)``, i.e. by the value of the
    polynomial at ``x = p``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be >= 1")
    for f in _monic(p, m):
        if is_irreducible(f, p):
            return f
    raise AssertionError("an irreducible polynomial exists in every degree")


def gf(p: int, m: int = 1) -> RingSpec:
    f = smallest_irreducible(p, m)
    # x^e mod f for e <= 2m - 2
    powers = [_basis(m, 0)]
    for _ in range(2 * m - 2):
        prev = powers[-1]
        lead = prev[-1]
        nxt = [0] + prev[:-1]
        if lead:
            nxt = [(c - lead * fc) % p for c, fc in zip(nxt, f[:-1])]
        powers.append(nxt)
    spec = RingSpec(f"gf({p},{m})", (p,) * m, _table(m, lambda i, j: powers[i + j]), True, tuple(_basis(m, 0)))
    return ensure_valid(spec)


def gf_q(q: int) -> RingSpec:
    pm = prime_power(q)
    if pm is None:
        raise ValueError(f"{q} is not a prime power")
    return gf(*pm)


def gaussian(n: int) -> RingSpec:
    if n < 2:
        raise ValueError(f"gaussian needs n >= 2, got {n}")

    def rule(i, j):
        if i == 1 and j == 1:
            return [n - 1, 0]
        return _basis(2, i + j)

    return ensure_valid(RingSpec(f"gaussian({n})", (n, n), _table(2, rule), True, (1, 0)))


# basis 1, i, j, k: product of units as (sign, index)
_QUAT = {
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
    (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
}


def quaternion(n: int) -> RingSpec:
    """Hamilton quaternions over Z/n; always flagged non-commutative."""
    if n < 2:
        raise ValueError(f"quaternion needs n >= 2, got {n}")

    def rule(i, j):
        if i == 0 or j == 0:
            return _basis(4, i + j)
        sign, t = _QUAT[(i, j)]
        return _basis(4, t, sign % n)

    return ensure_valid(RingSpec(f"quaternion({n})", (n,) * 4, _table(4, rule), False, (1, 0, 0, 0)))


def trunc_poly(p: int, s: int, degree: int) -> RingSpec:
    """Z/p^s [x] / (x^degree)."""
    if not is_prime(p) or s < 1 or degree < 1:
        raise ValueError(f"trunc_poly needs a prime p, s >= 1, degree >= 1; got {p, s, degree}")
    q = p**s

    def rule(i, j):
        return _basis(degree, i + j) if i + j < degree else [0] * degree

    spec = RingSpec(f"trunc_poly({p},{s},{degree})", (q,) * degree, _table(degree, rule), True, tuple(_basis(degree, 0)))
    return ensure_valid(spec)


def direct_product(a: RingSpec, b: RingSpec) -> RingSpec:
    ra, rb = a.rank, b.rank
    r = ra + rb

    def rule(i, j):
        if i < ra and j < ra:
            return list(a.products[i][j]) + [0] * rb
        if i >= ra and j >= ra:
            return [0] * ra + list(b.products[i - ra][j - ra])
        return [0] * r

    unit = a.unit + b.unit if a.unit is not None and b.unit is not None else None
    spec = RingSpec(
        f"direct_product({a.name},{b.name})",
        a.orders + b.orders,
        _table(r, rule),
        a.commutative and b.commutative,
        unit,
    )
    return ensure_valid(spec)


def torsion_poly(p: int, s: int) -> RingSpec:
    """Z/p^s [x] / (p x, x^2): additive group Z/p^s + Z/p, not free when s > 1."""
    if not is_prime(p) or s < 1:
        raise ValueError(f"torsion_poly needs a prime p and s >= 1; got {p, s}")

    def rule(i, j):
        return [[1, 0], [0, 1], [0, 1], [0, 0]][2 * i + j]

    return ensure_valid(RingSpec(f"torsion_poly({p},{s})", (p**s, p), _table(2, rule), True, (1, 0)))


def matrix_ring(n: int, m: int) -> RingSpec:
    """M_m(Z/n) on the basis of matrix units E_ab (row-major)."""
    if n < 2 or m < 1:
        raise ValueError(f"matrix_ring needs n >= 2 and m >= 1; got {n, m}")
    r = m * m

    def rule(i, j):
        a, b = divmod(i, m)
        c, e = divmod(j, m)
        return _basis(r, a * m + e) if b == c else [0] * r

    unit = tuple(1 if i // m == i % m else 0 for i in range(r))
    return ensure_valid(RingSpec(f"matrix_ring({n},{m})", (n,) * r, _table(r, rule), m == 1, unit))


def upper_triangular(n: int) -> RingSpec:
    """Upper triangular 2x2 matrices over Z/n on the basis E_11, E_12, E_22."""
    if n < 2:
        raise ValueError(f"upper_triangular needs n >= 2; got {n}")
    units = [(0, 0), (0, 1), (1, 1)]

    def rule(i, j):
        (a, b), (c, e) = units[i], units[j]
        return _basis(3, units.index((a, e))) if b == c else [0, 0, 0]

    return ensure_valid(RingSpec(f"upper_triangular({n})", (n,) * 3, _table(3, rule), False, (1, 0, 1)))


FAMILIES = {
    "zn": zn,
    "gf": gf,
    "gaussian": gaussian,
    "quaternion": quaternion,
    "null_ring": null_ring,
    "trunc_poly": trunc_poly,
    "direct_product": direct_product,
    "torsion_poly": torsion_poly,
    "matrix_ring": matrix_ring,
    "upper_triangular": upper_triangular,
}


def builtin(family: str, *params) -> RingSpec:
    try:
        ctor = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown ring family {family!r}; choose from {sorted(FAMILIES)}") from None
    return ctor(*params)


def parse_ring(expr: str) -> RingSpec:
    """Build a ring from an expression such as ``direct_product(zn(2),zn(3))``."""

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            return builtin(node.func.id, *(ev(a) for a in node.args))
        raise ValueError(f"unsupported ring expression {ast.unparse(node)!r}")

    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse ring expression {expr!r}") from exc
    spec = ev(tree.body)
    if not isinstance(spec, RingSpec):
        raise ValueError(f"{expr!r} does not describe a ring")
    return spec
