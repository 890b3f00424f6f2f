"""Shared fixtures and independent brute-force helpers.

The helpers here deliberately avoid the package's tables and kernels: plain
Python integers over Z/n, nothing else.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

ACCEPTANCE_RESULTS: dict[int, tuple[bool, float, str]] = {}


def zn_matrices(n: int, d: int):
    for flat in itertools.product(range(n), repeat=d * d):
        yield [list(flat[i * d:(i + 1) * d]) for i in range(d)]


def int_matmul(A, B, n):
    d = len(A)
    return [[sum(A[i][t] * B[t][j] for t in range(d)) % n for j in range(d)] for i in range(d)]


def naive_zn_power_sum(n: int, d: int, k: int) -> np.ndarray:
    """``sum M^k`` over all d x d matrices mod n, by repeated multiplication."""
    S = np.zeros((d, d), dtype=np.int64)
    for M in zn_matrices(n, d):
        P = M
        for _ in range(k - 1):
            P = int_matmul(P, M, n)
        S = (S + np.array(P)) % n
    return S


@pytest.fixture(scope="session")
def acceptance_results():
    return ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, secs, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s) {detail}")
