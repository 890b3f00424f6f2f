"""Compare the numba and numpy kernels on a few enumeration sizes.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are called directly, so the environment flag is irrelevant here.
The first numba call per signature is a warm-up and is not timed.
"""

import argparse
import time

import numpy as np

from matpowsum import _kernels
from matpowsum.builtins import gaussian, quaternion, zn
from matpowsum.ring import matrix_count, tables

POWER_CASES = [
    ("zn(6) d=2 k<=12", zn(6), 2, 12),
    ("zn(20) d=2 k<=12", zn(20), 2, 12),
    ("zn(4) d=3 k<=8", zn(4), 3, 8),
    ("gaussian(3) d=2 k<=8", gaussian(3), 2, 8),
    ("quaternion(2) d=2 k<=6", quaternion(2), 2, 6),
]

MONOMIAL_CASES = [
    ("x1 x2 x1 over (4,2) d=2", (1, 2, 1), (4, 2), 2),
    ("x1^2 x2^2 over (2,2) d=2", (1, 1, 2, 2), (2, 2), 2),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'case':34s} {'items':>10s} {'numba s':>9s} {'numpy s':>9s} {'speedup':>8s}")
    for label, spec, d, kmax in POWER_CASES:
        tb = tables(spec)
        total = matrix_count(spec, d)
        _kernels.power_sums_numba(tb.add, tb.mul, d, kmax, 0, 1)
        t_nb, a = best_of(lambda: _kernels.power_sums_numba(tb.add, tb.mul, d, kmax, 0, total), args.repeat)
        t_np, b = best_of(lambda: _kernels.power_sums_numpy(tb.coeffs, tb.orders, tb.weights, tb.add, tb.mul,
                                                             d, kmax, 0, total), args.repeat)
        assert np.array_equal(a, b), label
        print(f"{label:34s} {total:10d} {t_nb:9.3f} {t_np:9.3f} {t_np / t_nb:7.1f}x")

    for label, word, moduli, d in MONOMIAL_CASES:
        w = np.array([v - 1 for v in word], dtype=np.int64)
        m = np.array(moduli, dtype=np.int64)
        total = int(np.prod(m)) ** (d * d)
        _kernels.monomial_sum_numba(w, m, d, moduli[0], 0, 1)
        t_nb, a = best_of(lambda: _kernels.monomial_sum_numba(w, m, d, moduli[0], 0, total), args.repeat)
        t_np, b = best_of(lambda: _kernels.monomial_sum_numpy(w, m, d, moduli[0], 0, total), args.repeat)
        assert np.array_equal(a, b), label
        print(f"{label:34s} {total:10d} {t_nb:9.3f} {t_np:9.3f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
