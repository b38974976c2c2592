#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs every kernel on random inputs of a few sizes and prints the per-call
times side by side.  The numba column includes a warm-up call so JIT
compilation does not pollute the numbers.  If numba is unavailable (or
MOEAPAP_DISABLE_NUMBA is set) only the numpy path is timed.
"""

from __future__ import annotations

import time

import numpy as np

from moeapap import _kernels

SIZES = (64, 256, 1024)
REPEATS = 5


def _time(fn, args, repeats=REPEATS) -> float:
    fn(*args)  # warm-up (and JIT compile)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _inputs(name: str, n: int, rng):
    F2 = rng.random((n, 2))
    F3 = rng.random((n, 3))
    ref2 = np.array([1.1, 1.1])
    ref3 = np.array([1.1, 1.1, 1.1])
    if name in ("nd_mask", "nds_ranks", "crowding"):
        return (F3,)
    if name == "hv2d":
        return (F2, ref2)
    if name == "hv3d":
        return (F3, ref3)
    if name == "mean_min_dist":
        return (rng.random((1000, 3)), F3)
    if name == "count_dominated":
        return (rng.random((100_000, 3)), F3[:50])
    raise KeyError(name)


def main() -> None:
    rng = np.random.default_rng(42)
    have_numba = bool(_kernels.NUMBA_KERNELS)
    print(f"active backend: {_kernels.BACKEND}")
    header = f"{'kernel':16s} {'n':>6s} {'numpy':>12s}"
    if have_numba:
        header += f" {'numba':>12s} {'speedup':>9s}"
    print(header)
    for name, numpy_fn in _kernels.NUMPY_KERNELS.items():
        for n in SIZES:
            args = _inputs(name, n, rng)
            t_np = _time(numpy_fn, args)
            line = f"{name:16s} {n:6d} {t_np * 1e3:10.3f}ms"
            if have_numba:
                t_nb = _time(_kernels.NUMBA_KERNELS[name], args)
                line += f" {t_nb * 1e3:10.3f}ms {t_np / t_nb:8.1f}x"
            print(line)


if __name__ == "__main__":
    main()
