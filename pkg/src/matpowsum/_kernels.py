"""Enumeration kernels.

Two implementations of each kernel: numba ``@njit`` loops over the odometer
and a chunked pure-numpy path.  Set ``MATPOWSUM_DISABLE_NUMBA=1`` (or run
without numba installed) to select the numpy path.  Both are importable
directly for benchmarking and cross-checking.

Ring elements are table indices here; index 0 is the zero element.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("MATPOWSUM_DISABLE_NUMBA", "").lower() not in {"1", "true", "yes"}

CHUNK = 1 << 14
# keeps d * modulus**2 inside int64 for d <= 8
MAX_MONOMIAL_MODULUS = 1 << 28


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# --- numpy path ---------------------------------------------------------------

def _decode(idx: np.ndarray, radices: np.ndarray) -> np.ndarray:
    """Mixed-radix digits of ``idx``; the last position varies fastest."""
    out = np.empty((idx.shape[0], radices.shape[0]), dtype=np.int64)
    x = idx.copy()
    for pos in range(radices.shape[0] - 1, -1, -1):
        out[:, pos] = x % radices[pos]
        x //= radices[pos]
    return out


def _batch_matmul(add, mul, P, A):
    prod = mul[P[:, :, :, None], A[:, None, :, :]]  # (B, i, t, j)
    acc = prod[:, :, 0, :]
    for t in range(1, prod.shape[2]):
        acc = add[acc, prod[:, :, t, :]]
    return acc


def _batch_sum(coeffs, orders, weights, P):
    c = coeffs[P].sum(axis=0) % orders
    return c @ weights


def power_sums_numpy(coeffs, orders, weights, add, mul, d, kmax, lo, hi):
    n = add.shape[0]
    radices = np.full(d * d, n, dtype=np.int64)
    S = np.zeros((kmax, d, d), dtype=np.int64)
    for a in range(lo, hi, CHUNK):
        b = min(hi, a + CHUNK)
        A = _decode(np.arange(a, b, dtype=np.int64), radices).reshape(-1, d, d)
        P = A
        for k in range(kmax):
            if k:
                P = _batch_matmul(add, mul, P, A)
            S[k] = add[S[k], _batch_sum(coeffs, orders, weights, P)]
    return S


def monomial_sum_numpy(word, moduli, d, modulus, lo, hi):
    r = moduli.shape[0]
    dd = d * d
    radices = np.repeat(moduli, dd)
    S = np.zeros((d, d), dtype=np.int64)
    for a in range(lo, hi, CHUNK):
        b = min(hi, a + CHUNK)
        A = (_decode(np.arange(a, b, dtype=np.int64), radices) % modulus).reshape(-1, r, d, d)
        P = A[:, word[0]]
        for v in word[1:]:
            P = np.matmul(P, A[:, v]) % modulus
        S = (S + P.sum(axis=0)) % modulus
    return S


# --- numba path -----------------------------------------------------------------

def _power_sums_loop(add, mul, d, kmax, lo, hi):
    n = add.shape[0]
    dd = d * d
    digits = np.empty(dd, dtype=np.int64)
    x = lo
    for pos in range(dd - 1, -1, -1):
        digits[pos] = x % n
        x //= n
    S = np.zeros((kmax, d, d), dtype=np.int64)
    A = np.empty((d, d), dtype=np.int64)
    P = np.empty((d, d), dtype=np.int64)
    Q = np.empty((d, d), dtype=np.int64)
    for _ in range(lo, hi):
        for pos in range(dd):
            A[pos // d, pos % d] = digits[pos]
        for i in range(d):
            for j in range(d):
                P[i, j] = A[i, j]
                S[0, i, j] = add[S[0, i, j], A[i, j]]
        for k in range(1, kmax):
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for t in range(d):
                        acc = add[acc, mul[P[i, t], A[t, j]]]
                    Q[i, j] = acc
            for i in range(d):
                for j in range(d):
                    P[i, j] = Q[i, j]
                    S[k, i, j] = add[S[k, i, j], Q[i, j]]
        pos = dd - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < n:
                break
            digits[pos] = 0
            pos -= 1
    return S


def _monomial_loop(word, moduli, d, modulus, lo, hi):
    r = moduli.shape[0]
    dd = d * d
    npos = r * dd
    digits = np.empty(npos, dtype=np.int64)
    x = lo
    for pos in range(npos - 1, -1, -1):
        m = moduli[pos // dd]
        digits[pos] = x % m
        x //= m
    S = np.zeros((d, d), dtype=np.int64)
    A = np.empty((r, d, d), dtype=np.int64)
    P = np.empty((d, d), dtype=np.int64)
    Q = np.empty((d, d), dtype=np.int64)
    for _ in range(lo, hi):
        for pos in range(npos):
            v = pos // dd
            e = pos % dd
            A[v, e // d, e % d] = digits[pos] % modulus
        w0 = word[0]
        for i in range(d):
            for j in range(d):
                P[i, j] = A[w0, i, j]
        for step in range(1, word.shape[0]):
            v = word[step]
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for t in range(d):
                        acc += P[i, t] * A[v, t, j]
                    Q[i, j] = acc % modulus
            for i in range(d):
                for j in range(d):
                    P[i, j] = Q[i, j]
        for i in range(d):
            for j in range(d):
                S[i, j] = (S[i, j] + P[i, j]) % modulus
        pos = npos - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < moduli[pos // dd]:
                break
            digits[pos] = 0
            pos -= 1
    return S


if HAVE_NUMBA:
    power_sums_numba = njit(cache=True, nogil=True)(_power_sums_loop)
    monomial_sum_numba = njit(cache=True, nogil=True)(_monomial_loop)
else:  # pragma: no cover
    power_sums_numba = monomial_sum_numba = None


# --- dispatch -------------------------------------------------------------------

def power_sums(tb, d: int, kmax: int, lo: int, hi: int) -> np.ndarray:
    """Element indices of ``sum M**k`` for ``k = 1..kmax`` over matrix indices ``[lo, hi)``."""
    if USE_NUMBA:
        return power_sums_numba(tb.add, tb.mul, d, kmax, lo, hi)
    return power_sums_numpy(tb.coeffs, tb.orders, tb.weights, tb.add, tb.mul, d, kmax, lo, hi)


def monomial_sum(word: np.ndarray, moduli: np.ndarray, d: int, modulus: int, lo: int, hi: int) -> np.ndarray:
    """``sum w(A_1, ..., A_r) mod modulus`` over tuple indices ``[lo, hi)``."""
    if modulus > MAX_MONOMIAL_MODULUS:
        raise ValueError(f"modulus {modulus} too large for int64 accumulation")
    if USE_NUMBA:
        return monomial_sum_numba(word, moduli, d, modulus, lo, hi)
    return monomial_sum_numpy(word, moduli, d, modulus, lo, hi)
