"""Benchmark the hot residue scan: numba-jitted vs pure numpy.

Run directly:  python3 benchmarks/bench_kernels.py
The same kernels back every brute-force oracle in the package; the backend
used at runtime is picked by DIRICHLET_LAB_BACKEND (auto/numba/numpy).
"""

import time

import numpy as np

from dirichlet_lab import _kernels_numba, _kernels_numpy

CASES = [
    # (d, den, Q)  -- witness-style and random-sample-style workloads
    (1, 131072, 1_000_000),
    (1, 131072, 100_000),
    (2, 16384, 100_000),
    (3, 2500, 100_000),
    (2, 9999991, 10_000),
]


def time_fn(fn, nums, den, Q, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(nums, den, Q)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    rng = np.random.default_rng(0)
    # Trigger the jit compile outside the timed region.
    _kernels_numba.residue_norm_scan(np.array([1], dtype=np.int64), 7, 10)
    print(f"{'case':>28} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for d, den, Q in CASES:
        nums = rng.integers(1, den, size=d).astype(np.int64)
        t_nb, out_nb = time_fn(_kernels_numba.residue_norm_scan, nums, den, Q)
        t_np, out_np = time_fn(_kernels_numpy.residue_norm_scan, nums, den, Q)
        assert np.array_equal(out_nb, out_np), "kernel mismatch"
        label = f"d={d} den={den} Q={Q}"
        print(f"{label:>28} {t_nb * 1e3:>9.2f} ms {t_np * 1e3:>9.2f} ms {t_np / t_nb:>8.2f}x")


if __name__ == "__main__":
    main()
