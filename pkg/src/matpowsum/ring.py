"""Finite rings presented by additive generators and structure constants.

A ring with generators ``g_1..g_r`` of additive orders ``m_1..m_r`` is stored
as the table ``products[i][j] = (c_ij1, ..., c_ijr)`` meaning
``g_i * g_j = sum_t c_ijt g_t``.  Elements are coefficient tuples reduced
coordinatewise modulo the orders, so the additive group is always the direct
sum of the cyclic groups ``Z/m_i``.  Rings need not be unital or commutative.

Matrices over a ring are integer arrays of shape ``(d, d, r)`` holding one
coefficient vector per entry.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .numtheory import prime_power

Element = tuple[int, ...]

DEFAULT_BUDGET = 10**8
# add/mul lookup tables are card x card int64 arrays
MAX_TABLE_CARD = 2048


class SpecStructureError(ValueError):
    """Malformed ring presentation (wrong shapes or unreduced coefficients)."""


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} needs {required} operations, budget is {budget}")


@dataclass(frozen=True)
class RingSpec:
    name: str
    orders: tuple[int, ...]
    products: tuple[tuple[Element, ...], ...]
    commutative: bool = True
    unit: Element | None = None

    def __post_init__(self):
        orders = tuple(int(m) for m in self.orders)
        object.__setattr__(self, "orders", orders)
        r = len(orders)
        if r == 0:
            raise SpecStructureError("a ring needs at least one generator")
        if any(m < 2 for m in orders):
            raise SpecStructureError(f"generator orders must be >= 2, got {orders}")
        if max(orders) > 2**31:
            raise SpecStructureError("generator orders are limited to 2**31")
        if len(self.products) != r or any(len(row) != r for row in self.products):
            raise SpecStructureError(f"products table must be {r}x{r}")
        products = []
        for i, row in enumerate(self.products):
            new_row = []
            for j, c in enumerate(row):
                c = tuple(int(x) for x in c)
                if len(c) != r:
                    raise SpecStructureError(f"products[{i}][{j}] must have length {r}")
                if any(not 0 <= x < m for x, m in zip(c, orders)):
                    raise SpecStructureError(f"products[{i}][{j}] = {c} is not reduced mod {orders}")
                new_row.append(c)
            products.append(tuple(new_row))
        object.__setattr__(self, "products", tuple(products))
        if self.unit is not None:
            unit = tuple(int(x) for x in self.unit)
            if len(unit) != r or any(not 0 <= x < m for x, m in zip(unit, orders)):
                raise SpecStructureError(f"unit {unit} is not a reduced coefficient vector")
            object.__setattr__(self, "unit", unit)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def card(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def constants(self) -> np.ndarray:
        """Structure constants as an ``(r, r, r)`` int64 array."""
        return np.array(self.products, dtype=np.int64).reshape(self.rank, self.rank, self.rank)

    def __repr__(self):
        return f"RingSpec({self.name!r}, orders={self.orders})"


# --- elements -------------------------------------------------------------

def _check(spec: RingSpec, a: Sequence[int]) -> None:
    if len(a) != spec.rank:
        raise ValueError(f"element {tuple(a)} has length {len(a)}, ring {spec.name} has rank {spec.rank}")


def zero(spec: RingSpec) -> Element:
    return (0,) * spec.rank


def reduce(spec: RingSpec, a: Sequence[int]) -> Element:
    _check(spec, a)
    return tuple(int(x) % m for x, m in zip(a, spec.orders))


def generator(spec: RingSpec, i: int) -> Element:
    return tuple(1 if t == i else 0 for t in range(spec.rank))


def elem_add(spec: RingSpec, a: Sequence[int], b: Sequence[int]) -> Element:
    _check(spec, a)
    _check(spec, b)
    return tuple((int(x) + int(y)) % m for x, y, m in zip(a, b, spec.orders))


def elem_neg(spec: RingSpec, a: Sequence[int]) -> Element:
    _check(spec, a)
    return tuple(-int(x) % m for x, m in zip(a, spec.orders))


def elem_scale(spec: RingSpec, a: Sequence[int], c: int) -> Element:
    """Integer multiple ``c * a``."""
    _check(spec, a)
    return tuple(int(x) * c % m for x, m in zip(a, spec.orders))


def elem_mul(spec: RingSpec, a: Sequence[int], b: Sequence[int]) -> Element:
    _check(spec, a)
    _check(spec, b)
    r = spec.rank
    acc = [0] * r
    for i in range(r):
        ai = int(a[i])
        if not ai:
            continue
        for j in range(r):
            bj = int(b[j])
            if not bj:
                continue
            c = spec.products[i][j]
            for t in range(r):
                if c[t]:
                    acc[t] += ai * bj * c[t]
    return tuple(x % m for x, m in zip(acc, spec.orders))


def additive_order(spec: RingSpec, a: Sequence[int]) -> int:
    _check(spec, a)
    return math.lcm(*(m // math.gcd(m, int(x)) for x, m in zip(a, spec.orders)))


# --- matrices -------------------------------------------------------------

def mat_zero(spec: RingSpec, d: int) -> np.ndarray:
    return np.zeros((d, d, spec.rank), dtype=np.int64)


def mat_scalar(spec: RingSpec, d: int, e: Sequence[int]) -> np.ndarray:
    """``diag(e, ..., e)``."""
    out = mat_zero(spec, d)
    for i in range(d):
        out[i, i] = reduce(spec, e)
    return out


def as_matrix(spec: RingSpec, entries) -> np.ndarray:
    """Build a matrix from nested lists; bare ints are allowed for rank-1 rings."""
    arr = np.array(entries, dtype=np.int64)
    if arr.ndim == 2 and spec.rank == 1:
        arr = arr[:, :, None]
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != spec.rank:
        raise ValueError(f"cannot read a square matrix over {spec.name} from shape {arr.shape}")
    return arr % np.array(spec.orders, dtype=np.int64)


def mat_add(spec: RingSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch {A.shape} vs {B.shape}")
    return (A + B) % np.array(spec.orders, dtype=np.int64)


def mat_mul(spec: RingSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"dimension mismatch {A.shape} vs {B.shape}")
    d = A.shape[0]
    out = mat_zero(spec, d)
    for i in range(d):
        for j in range(d):
            acc = zero(spec)
            for t in range(d):
                acc = elem_add(spec, acc, elem_mul(spec, tuple(A[i, t]), tuple(B[t, j])))
            out[i, j] = acc
    return out


def mat_pow(spec: RingSpec, A: np.ndarray, k: int) -> np.ndarray:
    """``A**k`` by repeated multiplication; ``k >= 1`` since rings may lack a unit."""
    if k < 1:
        raise ValueError("matrix powers are defined for k >= 1 only")
    P = A.copy()
    for _ in range(k - 1):
        P = mat_mul(spec, P, A)
    return P


def mat_equal(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and bool(np.array_equal(A, B))


def is_zero_matrix(A: np.ndarray) -> bool:
    return not np.any(A)


# --- validation -----------------------------------------------------------

@dataclass
class Violation:
    law: str
    witness: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"law": self.law, "witness": list(self.witness)}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    observed_commutative: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "observed_commutative": self.observed_commutative,
            "violations": [v.to_dict() for v in self.violations],
        }


def validate_spec(spec: RingSpec) -> ValidationReport:
    """Check the ring laws on generators.  Witness indices are 1-based."""
    r = spec.rank
    report = ValidationReport()
    orders = spec.orders
    for i, j, t in itertools.product(range(r), repeat=3):
        c = spec.products[i][j][t]
        if (orders[i] * c) % orders[t] or (orders[j] * c) % orders[t]:
            report.violations.append(Violation("well-definedness", (i + 1, j + 1, t + 1)))
    gens = [generator(spec, i) for i in range(r)]
    for i, j, t in itertools.product(range(r), repeat=3):
        lhs = elem_mul(spec, spec.products[i][j], gens[t])
        rhs = elem_mul(spec, gens[i], spec.products[j][t])
        if lhs != rhs:
            report.violations.append(Violation("associativity", (i + 1, j + 1, t + 1)))
    report.observed_commutative = all(
        spec.products[i][j] == spec.products[j][i] for i in range(r) for j in range(i)
    )
    if spec.commutative and not report.observed_commutative:
        for i in range(r):
            for j in range(i):
                if spec.products[i][j] != spec.products[j][i]:
                    report.violations.append(Violation("commutativity", (j + 1, i + 1)))
    if spec.unit is not None:
        for i in range(r):
            if elem_mul(spec, spec.unit, gens[i]) != gens[i] or elem_mul(spec, gens[i], spec.unit) != gens[i]:
                report.violations.append(Violation("unit", (i + 1,)))
    return report


def ensure_valid(spec: RingSpec) -> RingSpec:
    report = validate_spec(spec)
    if not report.ok:
        laws = ", ".join(f"{v.law}{v.witness}" for v in report.violations[:5])
        raise ValueError(f"{spec.name} violates ring laws: {laws}")
    return spec


# --- enumeration ----------------------------------------------------------

def check_budget(required: int, budget: int | None, what: str = "enumeration") -> None:
    if budget is not None and required > budget:
        raise BudgetExceeded(required, budget, what)


def element_index(spec: RingSpec, a: Sequence[int]) -> int:
    idx = 0
    for x, m in zip(reduce(spec, a), spec.orders):
        idx = idx * m + x
    return idx


def element_from_index(spec: RingSpec, idx: int) -> Element:
    out = []
    for m in reversed(spec.orders):
        idx, x = divmod(idx, m)
        out.append(x)
    return tuple(reversed(out))


def enumerate_elements(spec: RingSpec, budget: int | None = DEFAULT_BUDGET) -> Iterator[Element]:
    """All elements in lexicographic order (last coordinate varies fastest)."""
    check_budget(spec.card, budget)
    return itertools.product(*(range(m) for m in spec.orders))


def matrix_count(spec: RingSpec, d: int) -> int:
    return spec.card ** (d * d)


def matrix_from_index(spec: RingSpec, d: int, idx: int) -> np.ndarray:
    """Decode a row-major odometer index into a matrix."""
    n = spec.card
    digits = []
    for _ in range(d * d):
        idx, x = divmod(idx, n)
        digits.append(x)
    digits.reverse()
    out = mat_zero(spec, d)
    for pos, x in enumerate(digits):
        out[pos // d, pos % d] = element_from_index(spec, x)
    return out


def enumerate_matrices(
    spec: RingSpec,
    d: int,
    start: int = 0,
    stop: int | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> Iterator[np.ndarray]:
    """Matrices with odometer index in ``[start, stop)``.

    Entry (0, 0) is the most significant digit and the last entry varies
    fastest, so contiguous index ranges correspond to fixed entry prefixes.
    """
    total = matrix_count(spec, d)
    stop = total if stop is None else min(stop, total)
    check_budget(stop - start, budget)
    for idx in range(start, stop):
        yield matrix_from_index(spec, d, idx)


def partition(total: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into ``parts`` contiguous, nearly equal ranges."""
    parts = max(1, min(parts, total)) if total else 1
    bounds = [total * i // parts for i in range(parts + 1)]
    return list(zip(bounds[:-1], bounds[1:]))


# --- lookup tables ----------------------------------------------------------

@dataclass(frozen=True)
class RingTables:
    """Element-indexed arithmetic tables for the enumeration kernels."""

    coeffs: np.ndarray  # (N, r)
    add: np.ndarray  # (N, N)
    mul: np.ndarray  # (N, N)
    neg: np.ndarray  # (N,)
    weights: np.ndarray  # (r,) index = coeffs @ weights
    orders: np.ndarray  # (r,)

    @property
    def card(self) -> int:
        return self.coeffs.shape[0]

    def encode(self, coeffs: np.ndarray) -> np.ndarray:
        return coeffs @ self.weights

    def decode_matrix(self, idx: np.ndarray) -> np.ndarray:
        """Element indices of shape (..., d, d) to coefficient arrays (..., d, d, r)."""
        return self.coeffs[idx]


@lru_cache(maxsize=64)
def tables(spec: RingSpec) -> RingTables:
    n = spec.card
    check_budget(n, MAX_TABLE_CARD, what=f"lookup tables for {spec.name}")
    orders = np.array(spec.orders, dtype=np.int64)
    r = spec.rank
    coeffs = np.array(list(itertools.product(*(range(m) for m in spec.orders))), dtype=np.int64)
    weights = np.array([math.prod(spec.orders[i + 1:]) for i in range(r)], dtype=np.int64)
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    C = spec.constants
    for t in range(r):
        add += ((coeffs[:, None, t] + coeffs[None, :, t]) % orders[t]) * weights[t]
        acc = np.zeros((n, n), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                if C[i, j, t]:
                    acc += np.outer(coeffs[:, i], coeffs[:, j]) % orders[t] * C[i, j, t]
                    acc %= orders[t]
        mul += acc * weights[t]
    neg = ((-coeffs) % orders) @ weights
    for arr in (coeffs, add, mul, neg, weights, orders):
        arr.setflags(write=False)
    return RingTables(coeffs, add, mul, neg, weights, orders)


# --- structure queries --------------------------------------------------------

@dataclass(frozen=True)
class Order2Element:
    element: Element
    idempotent: bool
    unique: bool
    count: int


def find_order2_element(spec: RingSpec) -> Order2Element | None:
    """The nonzero elements with ``2e = 0`` are exactly the vectors with
    entries in ``{0, m_i/2}`` on even-order coordinates."""
    choices = [(0, m // 2) if m % 2 == 0 else (0,) for m in spec.orders]
    found = [e for e in itertools.product(*choices) if any(e)]
    if not found:
        return None
    e = found[0]
    return Order2Element(e, elem_mul(spec, e, e) == e, len(found) == 1, len(found))


def find_unit(spec: RingSpec) -> Element | None:
    """Two-sided multiplicative identity, if any."""
    if spec.unit is not None:
        u = spec.unit
        gens = [generator(spec, i) for i in range(spec.rank)]
        if all(elem_mul(spec, u, g) == g and elem_mul(spec, g, u) == g for g in gens):
            return u
        return None
    # the unit is the solution of a linear system; search it only for small rings
    if spec.card > MAX_TABLE_CARD:
        return None
    tb = tables(spec)
    ident = np.arange(spec.card)
    hits = np.flatnonzero((tb.mul == ident[None, :]).all(axis=1) & (tb.mul == ident[:, None]).all(axis=0))
    return element_from_index(spec, int(hits[0])) if len(hits) else None


def is_commutative(spec: RingSpec) -> bool:
    return validate_spec(spec).observed_commutative


def is_cyclic_unital(spec: RingSpec) -> bool:
    """True when the ring is isomorphic to Z/n: a unit of additive order card(R)."""
    u = find_unit(spec)
    return u is not None and additive_order(spec, u) == spec.card


def is_field(spec: RingSpec) -> bool:
    if prime_power(spec.card) is None or spec.card > MAX_TABLE_CARD:
        return False
    u = find_unit(spec)
    if u is None or not is_commutative(spec):
        return False
    tb = tables(spec)
    return bool((tb.mul[1:] == element_index(spec, u)).any(axis=1).all())


def invariant_factors(spec: RingSpec) -> tuple[int, tuple[int, ...]] | None:
    """``(p, (s_1 >= ... >= s_r))`` when every generator order is a power of one prime.

    Coefficient vectors are unique, so the additive group is the direct sum of
    the cyclic groups of the generators and these are its invariant factors.
    """
    pps = [prime_power(m) for m in spec.orders]
    if any(x is None for x in pps) or len({p for p, _ in pps}) != 1:
        return None
    return pps[0][0], tuple(sorted((s for _, s in pps), reverse=True))


# --- JSON I/O -------------------------------------------------------------

def spec_to_dict(spec: RingSpec) -> dict:
    out = {
        "name": spec.name,
        "orders": list(spec.orders),
        "products": [[list(c) for c in row] for row in spec.products],
        "commutative": spec.commutative,
    }
    if spec.unit is not None:
        out["unit"] = list(spec.unit)
    return out


def spec_from_dict(data: dict) -> RingSpec:
    missing = {"name", "orders", "products", "commutative"} - set(data)
    if missing:
        raise SpecStructureError(f"ring spec is missing keys {sorted(missing)}")
    if not isinstance(data["commutative"], bool):
        raise SpecStructureError("'commutative' must be a boolean")
    return RingSpec(
        name=str(data["name"]),
        orders=tuple(data["orders"]),
        products=tuple(tuple(tuple(c) for c in row) for row in data["products"]),
        commutative=data["commutative"],
        unit=tuple(data["unit"]) if data.get("unit") is not None else None,
    )


def load_spec(path: str | Path) -> RingSpec:
    with open(path, encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


def dump_spec(spec: RingSpec, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2)
        fh.write("\n")
