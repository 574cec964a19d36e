"""Full-grid Hilbert traversal of a 2**L x 2**L grid, two ways.

``generate_recursive`` expands the four mutually recursive production
rules

    U ::= D v U > U ^ C      D ::= U > D v D < A
    A ::= C ^ A < A v D      C ::= A < C ^ C > U

(v down, ^ up, > right, < left) starting from U when the level is even and
D when it is odd, which keeps the sequences prefix-consistent with
``curves.hilbert_encode``.

``iter_nonrecursive`` walks the same sequence with a constant number of
operations per step and constant space: the production level responsible
for each move is recovered from the trailing zero count of the order
value, and a two-bit direction register is updated with xor arithmetic.
"""

from __future__ import annotations

from typing import Callable, Iterator

import numpy as np

from ._compat import compiled, jit_active

Visit = Callable[[int, int, int], None]

# rules flattened to (child, di, dj, child, di, dj, child, di, dj, child),
# states coded U=0 D=1 A=2 C=3 as in curves
_RULES = (
    (1, 1, 0, 0, 0, 1, 0, -1, 0, 3),  # U ::= D v U > U ^ C
    (0, 0, 1, 1, 1, 0, 1, 0, -1, 2),  # D ::= U > D v D < A
    (3, -1, 0, 2, 0, -1, 2, 1, 0, 1),  # A ::= C ^ A < A v D
    (2, 0, -1, 3, -1, 0, 3, 0, 1, 0),  # C ::= A < C ^ C > U
)


def _expand(level: int, visit: Visit) -> int:
    """Run the grammar expansion; returns the number of rule invocations."""
    i = j = h = 0
    calls = 0

    def walk(state: int, lvl: int) -> None:
        nonlocal i, j, h, calls
        calls += 1
        if lvl == -1:
            visit(i, j, h)
            return
        rule = _RULES[state]
        walk(rule[0], lvl - 1)
        i += rule[1]
        j += rule[2]
        h += 1
        walk(rule[3], lvl - 1)
        i += rule[4]
        j += rule[5]
        h += 1
        walk(rule[6], lvl - 1)
        i += rule[7]
        j += rule[8]
        h += 1
        walk(rule[9], lvl - 1)

    # start symbol U for even levels, D for odd ones
    walk(level & 1, level - 1)
    return calls


def generate_recursive(level: int, visit: Visit) -> None:
    """Visit all (i, j, h) of the 2**level square by grammar expansion.

    ``visit`` is invoked exactly 4**level times, in curve order, with h
    running from 0 to 4**level - 1.  Recursion depth is level + 1.
    """
    if level < 0:
        raise ValueError(f"level must be non-negative, got {level}")
    _expand(level, visit)


def count_recursive_calls(level: int) -> int:
    """Exact number of recursive invocations made by generate_recursive."""
    if level < 0:
        raise ValueError(f"level must be non-negative, got {level}")
    return _expand(level, lambda i, j, h: None)


def trailing_zeros(h: int) -> int:
    """Number of trailing zero bits of h > 0, via log2(h AND -h)."""
    if h <= 0:
        raise ValueError(f"trailing_zeros needs a positive value, got {h}")
    return (h & -h).bit_length() - 1


def _check_side(n: int) -> None:
    if n < 1 or n & (n - 1):
        raise ValueError(f"side length must be a power of two, got {n}")


def iter_nonrecursive(n: int, visit: Visit) -> None:
    """Visit the full Hilbert sequence of an n x n grid without recursion.

    n must be a power of two.  Produces exactly the generate_recursive
    sequence while keeping only (i, j, h, c) as state; the loop body is a
    fixed straight line of elementary operations.
    """
    _check_side(n)
    i = j = h = 0
    c = 3
    nn = n * n
    while h < nn:
        visit(i, j, h)
        h += 1
        l1 = trailing_zeros(h) >> 1  # production level minus one
        parity = l1 & 1
        a = (h >> (l1 << 1)) & 3  # position inside the responsible rule
        c ^= 3 * (parity ^ (a == 3))
        i += (1 - (c & 1)) * (c - 1)  # (c-1) mod 2, sign-preserving
        j += (c & 1) * (c - 2)  # (c-2) mod 2, sign-preserving
        c ^= parity ^ (a == 1)


def hilbert(n: int) -> Iterator[tuple[int, int, int]]:
    """Generator form of :func:`iter_nonrecursive`: yields (i, j, h)."""
    _check_side(n)
    i = j = h = 0
    c = 3
    nn = n * n
    while h < nn:
        yield i, j, h
        h += 1
        l1 = trailing_zeros(h) >> 1
        parity = l1 & 1
        a = (h >> (l1 << 1)) & 3
        c ^= 3 * (parity ^ (a == 3))
        i += (1 - (c & 1)) * (c - 1)
        j += (c & 1) * (c - 2)
        c ^= parity ^ (a == 1)


def _sequence_kernel(n, out):
    i = 0
    j = 0
    h = 0
    c = 3
    nn = n * n
    while h < nn:
        out[h, 0] = i
        out[h, 1] = j
        out[h, 2] = h
        h += 1
        hh = h & (-h)
        tz = 0
        while hh > 1:
            hh >>= 1
            tz += 1
        l1 = tz >> 1
        parity = l1 & 1
        a = (h >> (l1 << 1)) & 3
        c ^= 3 * (parity ^ (1 if a == 3 else 0))
        i += (1 - (c & 1)) * (c - 1)
        j += (c & 1) * (c - 2)
        c ^= parity ^ (1 if a == 1 else 0)


_sequence_py = _sequence_kernel
_sequence = compiled(_sequence_kernel)


def hilbert_sequence(n: int, use_numba: bool | None = None) -> np.ndarray:
    """Whole curve of an n x n grid as an (n*n, 3) int64 array of (i, j, h)."""
    _check_side(n)
    out = np.empty((n * n, 3), dtype=np.int64)
    kernel = _sequence if jit_active(use_numba) else _sequence_py
    kernel(n, out)
    return out


def _op_count_kernel(n):
    # counts every arithmetic/logic step of the loop body per iteration,
    # with the trailing-zero count charged as one operation (a single
    # instruction on real hardware); the visit callback is excluded
    i = 0
    j = 0
    h = 0
    c = 3
    nn = n * n
    lo = 1 << 30
    hi = 0
    while h < nn:
        ops = 0
        h += 1
        ops += 1
        hh = h & (-h)
        tz = 0
        while hh > 1:
            hh >>= 1
            tz += 1
        ops += 1
        l1 = tz >> 1
        ops += 1
        parity = l1 & 1
        ops += 1
        sh = l1 << 1
        ops += 1
        a = h >> sh
        ops += 1
        a &= 3
        ops += 1
        b3 = 1 if a == 3 else 0
        ops += 1
        x3 = parity ^ b3
        ops += 1
        m3 = 3 * x3
        ops += 1
        c ^= m3
        ops += 1
        cb = c & 1
        ops += 1
        t1 = 1 - cb
        ops += 1
        t2 = c - 1
        ops += 1
        di = t1 * t2
        ops += 1
        i += di
        ops += 1
        t3 = c - 2
        ops += 1
        dj = cb * t3
        ops += 1
        j += dj
        ops += 1
        b1 = 1 if a == 1 else 0
        ops += 1
        x1 = parity ^ b1
        ops += 1
        c ^= x1
        ops += 1
        if ops < lo:
            lo = ops
        if ops > hi:
            hi = ops
    return lo, hi


_op_count_py = _op_count_kernel
_op_count_jit = compiled(_op_count_kernel)


def _op_counts(n: int, use_numba: bool | None = None) -> tuple[int, int]:
    """(min, max) elementary operations per iteration of the loop body."""
    _check_side(n)
    kernel = _op_count_jit if jit_active(use_numba) else _op_count_py
    lo, hi = kernel(n)
    return int(lo), int(hi)
