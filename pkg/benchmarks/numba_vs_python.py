"""Compare the numba-compiled kernels against their pure-Python twins.

Run directly:  python benchmarks/numba_vs_python.py
The same fallback path is what the whole package uses when
HILBERTLOOPS_DISABLE_NUMBA=1 is set or numba is missing.
"""

import time

import numpy as np

from hilbertloops import HAVE_NUMBA, CacheConfig, kernels, matmul_trace, NESTED
from hilbertloops.cachesim import simulate
from hilbertloops.lindenmayer import hilbert_sequence


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def row(name, jit_seconds, py_seconds):
    speedup = py_seconds / jit_seconds if jit_seconds > 0 else float("inf")
    print(f"{name:<28} numba {jit_seconds * 1e3:9.2f} ms   python {py_seconds * 1e3:9.2f} ms   x{speedup:,.1f}")


def main():
    if not HAVE_NUMBA:
        print("numba not installed; nothing to compare")
        return

    print(f"{'kernel':<28} {'jit':>15}        {'fallback':>15}")

    n = 512
    hilbert_sequence(4, use_numba=True)  # compile outside the timer
    jit, a = timed(lambda: hilbert_sequence(n, use_numba=True))
    py, b = timed(lambda: hilbert_sequence(n, use_numba=False), repeat=1)
    assert np.array_equal(a, b)
    row(f"hilbert_sequence({n})", jit, py)

    trace = matmul_trace(48, 48, 48, NESTED)
    config = CacheConfig(128, 8)
    simulate(config, trace, use_numba=True)
    jit, a = timed(lambda: simulate(config, trace, use_numba=True))
    py, b = timed(lambda: simulate(config, trace, use_numba=False), repeat=1)
    assert a.misses == b.misses
    row("lru simulate (221k accesses)", jit, py)

    rng = np.random.default_rng(0)
    B = rng.standard_normal((96, 96))
    C = rng.standard_normal((96, 96))
    kernels.matmul(B[:4, :4], C[:4, :4], use_numba=True)
    jit, a = timed(lambda: kernels.matmul(B, C, use_numba=True))
    py, b = timed(lambda: kernels.matmul(B, C, use_numba=False), repeat=1)
    assert np.array_equal(a, b)
    row("matmul 96x96", jit, py)

    D = rng.integers(1, 60, (96, 96)).astype(float)
    np.fill_diagonal(D, 0.0)
    kernels.floyd_warshall(D[:4, :4], use_numba=True)
    jit, a = timed(lambda: kernels.floyd_warshall(D, use_numba=True))
    py, b = timed(lambda: kernels.floyd_warshall(D, use_numba=False), repeat=1)
    assert np.array_equal(a, b)
    row("floyd_warshall 96", jit, py)


if __name__ == "__main__":
    main()
