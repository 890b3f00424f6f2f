"""Brute-force ground truth by exhaustive enumeration.

Fast paths run the compiled kernels over contiguous index ranges and combine
partial sums with ring addition, so any partition of the enumeration gives the
same answer.  The ``slow_*`` functions are unfactored pure-Python loops used to
re-verify anything that looks like a counterexample.

Monomial sums are taken over integer matrices with entries in
``{0, ..., n_i - 1}``; since reduction ``Z -> Z/n_1`` is a ring homomorphism,
every product and sum is reduced mod ``n_1`` as it is formed, which gives the
same residue as exact integer evaluation followed by one reduction.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from . import _kernels
from .ring import (
    DEFAULT_BUDGET,
    Element,
    RingSpec,
    check_budget,
    enumerate_matrices,
    mat_add,
    mat_pow,
    mat_zero,
    matrix_count,
    partition,
    tables,
)


def _map_ranges(fn, total: int, jobs: int = 1, parts: int | None = None):
    ranges = partition(total, parts or jobs)
    if jobs > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda lh: fn(*lh), ranges))
    return [fn(lo, hi) for lo, hi in ranges]


# --- matrix and element power sums -------------------------------------------

def power_sum_cost(spec: RingSpec, d: int, kmax: int) -> int:
    return matrix_count(spec, d) * max(1, (kmax - 1) * d**3)


def matrix_power_sums(
    spec: RingSpec,
    d: int,
    kmax: int,
    budget: int | None = DEFAULT_BUDGET,
    jobs: int = 1,
    parts: int | None = None,
) -> np.ndarray:
    """``S_k^d(R)`` for every ``k = 1..kmax`` in one pass: array ``(kmax, d, d, r)``."""
    if d < 1 or kmax < 1:
        raise ValueError("need d >= 1 and kmax >= 1")
    check_budget(power_sum_cost(spec, d, kmax), budget, f"power sums over {spec.name}, d={d}, k<={kmax}")
    tb = tables(spec)
    total = matrix_count(spec, d)
    partials = _map_ranges(lambda lo, hi: _kernels.power_sums(tb, d, kmax, lo, hi), total, jobs, parts)
    S = partials[0]
    for part in partials[1:]:
        S = tb.add[S, part]
    return tb.coeffs[S]


def matrix_power_sum_oracle(
    spec: RingSpec, d: int, k: int, budget: int | None = DEFAULT_BUDGET, jobs: int = 1
) -> np.ndarray:
    """``sum_{M in M_d(R)} M^k`` as a ``(d, d, r)`` array."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return matrix_power_sums(spec, d, k, budget, jobs)[k - 1]


def ring_element_power_sums(spec: RingSpec, kmax: int, budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
    """``sum_z z^k`` for ``k = 1..kmax``: array ``(kmax, r)``."""
    return matrix_power_sums(spec, 1, kmax, budget)[:, 0, 0, :]


def ring_element_power_sum_oracle(spec: RingSpec, k: int, budget: int | None = DEFAULT_BUDGET) -> Element:
    return tuple(int(x) for x in ring_element_power_sums(spec, k, budget)[k - 1])


def slow_matrix_power_sum(spec: RingSpec, d: int, k: int, budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
    """Reference path: generic element arithmetic, no tables, no shared powers."""
    check_budget(power_sum_cost(spec, d, k), budget)
    S = mat_zero(spec, d)
    for M in enumerate_matrices(spec, d, budget=None):
        S = mat_add(spec, S, mat_pow(spec, M, k))
    return S


# --- scalar exponent sums -------------------------------------------------------

def scalar_exponent_sum_oracle(m: int, betas: Sequence[int]) -> int:
    """``sum_{x_1..x_tau < m} x_1^b_1 ... x_tau^b_tau  mod m`` (with ``0^0 = 1``).

    The ranges are independent, so the joint sum is the product of the
    one-variable sums.
    """
    if m < 2 or not betas or any(b < 0 for b in betas):
        raise ValueError("need m >= 2 and a nonempty list of exponents >= 0")
    out = 1
    for b in betas:
        out = out * (sum(pow(x, b, m) for x in range(m)) % m) % m
    return out


def scalar_exponent_sum_double_loop(m: int, betas: Sequence[int]) -> int:
    """Unfactored form of ``scalar_exponent_sum_oracle`` for ``tau <= 2``."""
    if len(betas) > 2:
        raise ValueError("the unfactored loop is only offered for tau <= 2")
    total = 0
    for xs in itertools.product(range(m), repeat=len(betas)):
        total += math.prod(x**b for x, b in zip(xs, betas))
    return total % m


# --- monomials ------------------------------------------------------------------

def check_word(word: Sequence[int], r: int | None = None) -> tuple[int, ...]:
    word = tuple(int(v) for v in word)
    if not word:
        raise ValueError("a monomial needs at least one letter")
    if min(word) < 1:
        raise ValueError(f"variable indices are 1-based, got {word}")
    if r is not None and max(word) > r:
        raise ValueError(f"word {word} uses x_{max(word)} but only {r} moduli were given")
    return word


def degrees(word: Sequence[int], r: int | None = None) -> tuple[int, ...]:
    """Per-variable occurrence counts ``(k_1, ..., k_r)``."""
    word = check_word(word)
    r = r or max(word)
    return tuple(word.count(i) for i in range(1, r + 1))


def check_moduli(moduli: Sequence[int]) -> tuple[int, ...]:
    moduli = tuple(int(n) for n in moduli)
    if not moduli or min(moduli) < 2:
        raise ValueError(f"moduli must be >= 2, got {moduli}")
    if any(a < b for a, b in zip(moduli, moduli[1:])):
        raise ValueError(f"moduli must be non-increasing (n_1 >= n_2 >= ...), got {moduli}")
    return moduli


def monomial_cost(word: Sequence[int], moduli: Sequence[int], d: int) -> int:
    return math.prod(moduli) ** (d * d) * max(1, (len(word) - 1) * d**3)


def monomial_sum_oracle(
    word: Sequence[int],
    moduli: Sequence[int],
    d: int,
    budget: int | None = DEFAULT_BUDGET,
    jobs: int = 1,
    parts: int | None = None,
) -> np.ndarray:
    """``S_w^d(n_1, ..., n_r) mod n_1`` as a ``(d, d)`` integer array."""
    moduli = check_moduli(moduli)
    word = check_word(word, len(moduli))
    check_budget(monomial_cost(word, moduli, d), budget, f"monomial sum {word} over {moduli}, d={d}")
    w = np.array([v - 1 for v in word], dtype=np.int64)
    mods = np.array(moduli, dtype=np.int64)
    n1 = moduli[0]
    total = math.prod(moduli) ** (d * d)
    partials = _map_ranges(lambda lo, hi: _kernels.monomial_sum(w, mods, d, n1, lo, hi), total, jobs, parts)
    return sum(partials) % n1


def _int_matmul(A, B):
    d = len(A)
    return [[sum(A[i][t] * B[t][j] for t in range(d)) for j in range(d)] for i in range(d)]


def slow_monomial_sum(word: Sequence[int], moduli: Sequence[int], d: int, budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
    """Reference path: exact Python integers, reduced once at the end."""
    moduli = check_moduli(moduli)
    word = check_word(word, len(moduli))
    check_budget(monomial_cost(word, moduli, d), budget)
    ranges = [list(itertools.product(range(n), repeat=d * d)) for n in moduli]
    S = [[0] * d for _ in range(d)]
    for mats in itertools.product(*ranges):
        As = [[list(m[i * d:(i + 1) * d]) for i in range(d)] for m in mats]
        P = As[word[0] - 1]
        for v in word[1:]:
            P = _int_matmul(P, As[v - 1])
        for i in range(d):
            for j in range(d):
                S[i][j] += P[i][j]
    return np.array([[x % moduli[0] for x in row] for row in S], dtype=np.int64)


def multiset_words(kappa: Sequence[int]) -> list[tuple[int, ...]]:
    """All words with ``deg_{x_i} = kappa[i]``, in lexicographic order."""
    word = [i + 1 for i, k in enumerate(kappa) for _ in range(k)]
    if not word:
        raise ValueError("kappa must have positive total degree")
    out = [tuple(word)]
    while True:
        # next lexicographic permutation
        i = len(word) - 2
        while i >= 0 and word[i] >= word[i + 1]:
            i -= 1
        if i < 0:
            return out
        j = len(word) - 1
        while word[j] <= word[i]:
            j -= 1
        word[i], word[j] = word[j], word[i]
        word[i + 1:] = reversed(word[i + 1:])
        out.append(tuple(word))


def omega_kappa_cost(kappa: Sequence[int], d: int, p: int) -> int:
    words = math.factorial(sum(kappa)) // math.prod(math.factorial(k) for k in kappa)
    return words * monomial_cost([1] * sum(kappa), [p] * len(kappa), d)


def omega_kappa_sum_oracle(
    kappa: Sequence[int], d: int, p: int, budget: int | None = DEFAULT_BUDGET, jobs: int = 1
) -> np.ndarray:
    """``sum_{w in Omega_kappa} sum_{A_i in M_p^d} w(A_1, ..., A_r) mod p``."""
    kappa = tuple(int(k) for k in kappa)
    if not kappa or min(kappa) < 0:
        raise ValueError(f"kappa must be a list of non-negative integers, got {kappa}")
    check_budget(omega_kappa_cost(kappa, d, p), budget, f"Omega_kappa sum for kappa={kappa}")
    moduli = (p,) * len(kappa)
    S = np.zeros((d, d), dtype=np.int64)
    for w in multiset_words(kappa):
        S = (S + monomial_sum_oracle(w, moduli, d, budget=None, jobs=jobs)) % p
    return S
