"""Matrix multiplication and Floyd-Warshall, parameterized by traversal
order, plus element-granularity access-trace builders for the cache
simulator.

The (i, j) result pairs of both kernels are independent within a step, so
the traversal order permutes work without changing results: every scalar
product accumulates over k left to right, making outputs bitwise identical
across orders.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._compat import compiled, jit_active
from .cachesim import AccessTrace
from .nonsquare import hilbert_rect


class DimensionMismatch(ValueError):
    pass


class NegativeCycleError(ValueError):
    pass


# no-edge sentinel: additions saturate here instead of overflowing
FLOYD_INF = float(np.finfo(np.float64).max)


@dataclass(frozen=True)
class TraversalOrder:
    kind: str
    block_rows: int | None = None


NESTED = TraversalOrder("nested")
HILBERT = TraversalOrder("hilbert")


def blocked(block_rows: int) -> TraversalOrder:
    """Cache-conscious order: outer loop strides block_rows rows at a time."""
    return TraversalOrder("blocked", block_rows)


def order_pairs(n: int, m: int, order: TraversalOrder) -> np.ndarray:
    """All (i, j) of [0,n) x [0,m) in traversal order, as an (n*m, 2) array."""
    if order.kind == "nested":
        i = np.repeat(np.arange(n, dtype=np.int64), m)
        j = np.tile(np.arange(m, dtype=np.int64), n)
        return np.column_stack((i, j))
    if order.kind == "blocked":
        s = order.block_rows
        if s is None or not 1 <= s <= n:
            raise ValueError(f"blocked order needs 1 <= block_rows <= {n}, got {s}")
        chunks = []
        for start in range(0, n, s):
            rows = np.arange(start, min(start + s, n), dtype=np.int64)
            i = np.tile(rows, m)
            j = np.repeat(np.arange(m, dtype=np.int64), rows.size)
            chunks.append(np.column_stack((i, j)))
        return np.concatenate(chunks)
    if order.kind == "hilbert":
        out = np.empty((n * m, 2), dtype=np.int64)
        for idx, (i, j) in enumerate(hilbert_rect(n, m)):
            out[idx, 0] = i
            out[idx, 1] = j
        return out
    raise ValueError(f"unknown traversal order {order.kind!r}")


# ---------------------------------------------------------------------------
# matrix multiplication


def _matmul_kernel(B, CT, pairs, A):
    kdim = B.shape[1]
    for idx in range(pairs.shape[0]):
        i = pairs[idx, 0]
        j = pairs[idx, 1]
        acc = 0.0
        for kk in range(kdim):
            acc += B[i, kk] * CT[j, kk]
        A[i, j] = acc


_matmul_py = _matmul_kernel
_matmul_jit = compiled(_matmul_kernel)


def matmul(B, C, order: TraversalOrder = NESTED, use_numba: bool | None = None) -> np.ndarray:
    """A = B @ C with a fixed left-to-right summation order per element.

    C is transposed once so both operands are read row-wise; the (i, j)
    pairs are walked in the given traversal order.  Results are bitwise
    identical across orders.
    """
    B = np.ascontiguousarray(B, dtype=np.float64)
    C = np.ascontiguousarray(C, dtype=np.float64)
    if B.ndim != 2 or C.ndim != 2 or B.shape[1] != C.shape[0]:
        raise DimensionMismatch(f"cannot multiply {B.shape} by {C.shape}")
    n, m = B.shape[0], C.shape[1]
    A = np.zeros((n, m), dtype=np.float64)
    if jit_active(use_numba):
        CT = np.ascontiguousarray(C.T)
        _matmul_jit(B, CT, order_pairs(n, m, order), A)
    else:
        # fallback path: accumulate row-wise over k; the result is pair-order
        # independent, and per element this is the same add sequence
        order_pairs(n, m, order)  # still validates the order parameters
        for i in range(n):
            acc = np.zeros(m, dtype=np.float64)
            for kk in range(B.shape[1]):
                acc += B[i, kk] * C[kk, :]
            A[i, :] = acc
    return A


def matmul_trace(n: int, k: int, m: int, order: TraversalOrder = NESTED) -> AccessTrace:
    """Read addresses of B and C-transposed for A = B @ C, element granularity.

    B occupies [0, n*k), C-transposed [n*k, n*k + m*k); each (i, j) pair
    reads its B row and CT row interleaved, as the scalar-product loop
    does.  A writes are not traced.
    """
    if n < 1 or k < 1 or m < 1:
        raise ValueError("matmul trace dimensions must be positive")
    pairs = order_pairs(n, m, order)
    lanes = np.arange(k, dtype=np.int64)
    block = np.empty((pairs.shape[0], 2 * k), dtype=np.int64)
    block[:, 0::2] = pairs[:, 0:1] * k + lanes
    block[:, 1::2] = n * k + pairs[:, 1:2] * k + lanes
    return AccessTrace.from_addresses(block.ravel(), footprint=n * k + m * k)


# ---------------------------------------------------------------------------
# Floyd-Warshall


def _floyd_kernel(d, pairs, inf):
    n = d.shape[0]
    for k in range(n):
        # row k and column k are finalized first; they only read themselves
        # plus d[k,k], so every remaining (i,j) update of this step depends
        # on nothing the step still writes
        for j in range(n):
            a = d[k, k]
            b = d[k, j]
            if a < inf and b < inf:
                s = a + b
                if s > inf:
                    s = inf
                if d[k, j] > s:
                    d[k, j] = s
        for i in range(n):
            if i == k:
                continue
            a = d[i, k]
            b = d[k, k]
            if a < inf and b < inf:
                s = a + b
                if s > inf:
                    s = inf
                if d[i, k] > s:
                    d[i, k] = s
        for idx in range(pairs.shape[0]):
            i = pairs[idx, 0]
            j = pairs[idx, 1]
            if i == k or j == k:
                continue
            a = d[i, k]
            b = d[k, j]
            if a < inf and b < inf:
                s = a + b
                if s > inf:
                    s = inf
                if d[i, j] > s:
                    d[i, j] = s
        for v in range(n):
            if d[v, v] < 0.0:
                return k
    return -1


_floyd_py = _floyd_kernel
_floyd_jit = compiled(_floyd_kernel)


def floyd_warshall(D, order: TraversalOrder = NESTED, use_numba: bool | None = None) -> np.ndarray:
    """All-pairs shortest paths; FLOYD_INF marks missing edges.

    The outer k loop is sequential; within one step, row k and column k
    are finalized first and the remaining pairs are updated in the given
    traversal order.  Raises NegativeCycleError when a diagonal entry
    turns negative.
    """
    d = np.array(D, dtype=np.float64, copy=True)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise DimensionMismatch(f"distance matrix must be square, got {d.shape}")
    n = d.shape[0]
    if np.any(d.diagonal() != 0.0):
        raise ValueError("distance matrix diagonal must be zero")
    if jit_active(use_numba):
        bad = int(_floyd_jit(d, order_pairs(n, n, order), FLOYD_INF))
        if bad >= 0:
            raise NegativeCycleError(f"negative cycle detected at pivot {bad}")
    else:
        order_pairs(n, n, order)  # validate order parameters
        for k in range(n):
            col = d[:, k:k + 1]
            row = d[k:k + 1, :]
            blocked_mask = (col >= FLOYD_INF) | (row >= FLOYD_INF)
            with np.errstate(over="ignore"):
                s = np.minimum(col + row, FLOYD_INF)
            s[blocked_mask] = FLOYD_INF
            np.minimum(d, s, out=d)
            if np.any(d.diagonal() < 0.0):
                raise NegativeCycleError(f"negative cycle detected at pivot {k}")
    return d


def floyd_trace(n: int, order: TraversalOrder = NESTED) -> AccessTrace:
    """Read addresses of one Floyd-Warshall run over an n x n matrix.

    Every update of d[i,j] at pivot k emits the reads (i*n+j, i*n+k, k*n+j);
    per pivot, row k comes first, then column k, then the remaining pairs
    in the given traversal order.
    """
    if n < 1:
        raise ValueError("floyd trace needs n >= 1")
    pairs = order_pairs(n, n, order)
    chunks = []
    rng = np.arange(n, dtype=np.int64)
    for k in range(n):
        row = np.column_stack((k * n + rng, np.full(n, k * n + k, dtype=np.int64), k * n + rng))
        ci = rng[rng != k]
        col = np.column_stack((ci * n + k, ci * n + k, np.full(n - 1, k * n + k, dtype=np.int64)))
        keep = (pairs[:, 0] != k) & (pairs[:, 1] != k)
        pi = pairs[keep, 0]
        pj = pairs[keep, 1]
        rest = np.column_stack((pi * n + pj, pi * n + k, k * n + pj))
        chunks.append(row.ravel())
        chunks.append(col.ravel())
        chunks.append(rest.ravel())
    return AccessTrace.from_addresses(np.concatenate(chunks), footprint=n * n)


# ---------------------------------------------------------------------------
# matrix CSV I/O (one row per line)


def save_matrix_csv(matrix, path) -> None:
    np.savetxt(path, np.asarray(matrix, dtype=np.float64), delimiter=",", fmt="%.17g")


def load_matrix_csv(path) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, delimiter=",", dtype=np.float64))
