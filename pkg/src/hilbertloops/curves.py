"""Coordinate <-> order-value conversions for Z-order and Hilbert curves.

Grid convention: ``i`` is the row index and grows downward, ``j`` is the
column index and grows rightward.  Coordinates are limited to 31 bits each
so every order value fits into an unsigned 64-bit word.

The Hilbert conversion runs a four-state automaton (states U, D, A, C, one
per base traversal pattern) over the coordinate bits, most significant
first.  Conversions always start in state U and consume an even number of
bit pairs; a pair of leading zero bits only toggles U <-> D while emitting
a leading zero digit, which makes the encoding prefix-stable: padding with
more leading zero pairs never changes the result.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Callable

COORD_BITS = 31
COORD_MAX = (1 << COORD_BITS) - 1
ORDER_MAX = (1 << (2 * COORD_BITS)) - 1


class HilbertState(IntEnum):
    """The four base traversal patterns, doubling as automaton states."""

    U = 0
    D = 1
    A = 2
    C = 3


# Forward transition tables, indexed [state][pair] where pair = 2*i_bit + j_bit.
# Each row's digits are a permutation of {0,1,2,3} and the four pairs cover
# {0,1}^2 exactly once; test_curves.py checks both, and the grammar
# consistency is pinned by the three-way oracle test in test_lindenmayer.py.
_DIGIT = (
    (0, 3, 1, 2),  # U
    (0, 1, 3, 2),  # D
    (2, 1, 3, 0),  # A
    (2, 3, 1, 0),  # C
)
_NEXT = (
    (1, 3, 0, 0),  # U: (0,0)->D (0,1)->C (1,0)->U (1,1)->U
    (0, 1, 2, 1),  # D
    (2, 2, 1, 3),  # A
    (3, 0, 3, 2),  # C
)

# Inverse tables, indexed [state][digit]; same automaton with input and
# output exchanged.
_PAIR_INV = (
    (0, 2, 3, 1),  # U
    (0, 1, 3, 2),  # D
    (3, 1, 0, 2),  # A
    (3, 2, 0, 1),  # C
)
_NEXT_INV = (
    (1, 0, 0, 3),  # U
    (0, 1, 1, 2),  # D
    (3, 2, 2, 1),  # A
    (2, 3, 3, 0),  # C
)


def _check_coord(value: int, name: str) -> None:
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    if value > COORD_MAX:
        raise OverflowError(f"{name}={value} exceeds {COORD_BITS} bits; order value would not fit 64 bits")


def _check_order(h: int) -> None:
    if h < 0:
        raise ValueError(f"order value must be non-negative, got {h}")
    if h > ORDER_MAX:
        raise OverflowError(f"order value {h} exceeds {2 * COORD_BITS} bits")


def effective_length(i: int, j: int) -> int:
    """Number of bit pairs the Hilbert automaton has to consume for (i, j).

    Returns the smallest even bit count L with 2**L > max(i, j), clamped to
    a minimum of 2.  Encoding with L bits equals encoding with any larger
    even count, so this is the point where the value stabilises.
    """
    _check_coord(i, "i")
    _check_coord(j, "j")
    bits = max(i, j).bit_length()
    bits += bits & 1
    return max(bits, 2)


def _spread(v: int) -> int:
    # interleave-with-zeros in O(log bits) mask steps (software PDEP)
    v &= 0xFFFFFFFF
    v = (v | (v << 16)) & 0x0000FFFF0000FFFF
    v = (v | (v << 8)) & 0x00FF00FF00FF00FF
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0F
    v = (v | (v << 2)) & 0x3333333333333333
    v = (v | (v << 1)) & 0x5555555555555555
    return v


def _compact(v: int) -> int:
    v &= 0x5555555555555555
    v = (v | (v >> 1)) & 0x3333333333333333
    v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0F
    v = (v | (v >> 4)) & 0x00FF00FF00FF00FF
    v = (v | (v >> 8)) & 0x0000FFFF0000FFFF
    v = (v | (v >> 16)) & 0x00000000FFFFFFFF
    return v


def z_encode(i: int, j: int) -> int:
    """Z-order (Morton) value of (i, j): bit-interleaving with the i bits
    in the higher position of each pair."""
    _check_coord(i, "i")
    _check_coord(j, "j")
    return (_spread(i) << 1) | _spread(j)


def _z_encode_bitloop(i: int, j: int) -> int:
    # portable per-bit reference; kept as the independent oracle for z_encode
    h = 0
    for bit in range(max(i, j).bit_length()):
        h |= ((i >> bit) & 1) << (2 * bit + 1)
        h |= ((j >> bit) & 1) << (2 * bit)
    return h


def z_decode(h: int) -> tuple[int, int]:
    """Inverse of :func:`z_encode`: odd bit positions become i, even ones j."""
    _check_order(h)
    return _compact(h >> 1), _compact(h)


def _hilbert_encode_bits(i: int, j: int, nbits: int) -> int:
    # automaton run over exactly nbits bit pairs, starting in state U
    state = 0
    h = 0
    for bit in range(nbits - 1, -1, -1):
        pair = (((i >> bit) & 1) << 1) | ((j >> bit) & 1)
        h = (h << 2) | _DIGIT[state][pair]
        state = _NEXT[state][pair]
    return h


def hilbert_encode(i: int, j: int) -> int:
    """Hilbert order value of (i, j).

    Feeds the bit pairs of (i, j), most significant first, through the
    U/D/A/C automaton starting in state U over ``effective_length(i, j)``
    bits.  Prefix-stable: leading zero pairs emit leading zero digits.
    """
    return _hilbert_encode_bits(i, j, effective_length(i, j))


def hilbert_decode(h: int) -> tuple[int, int]:
    """Coordinates (i, j) whose Hilbert order value is ``h``.

    Runs the inverse automaton from state U over an even number of
    four-adic digits; each digit appends one bit to i and one to j.
    """
    _check_order(h)
    ndigits = (h.bit_length() + 1) >> 1
    ndigits += ndigits & 1
    ndigits = max(ndigits, 2)
    state = 0
    i = j = 0
    for pos in range(ndigits - 1, -1, -1):
        digit = (h >> (2 * pos)) & 3
        pair = _PAIR_INV[state][digit]
        i = (i << 1) | (pair >> 1)
        j = (j << 1) | (pair & 1)
        state = _NEXT_INV[state][digit]
    return i, j


def canonic_order(i: int, j: int, n: int) -> int:
    """Row-major position i*n + j on an n-column grid."""
    _check_coord(i, "i")
    _check_coord(j, "j")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if j >= n:
        raise ValueError(f"column {j} out of range for n={n}")
    return i * n + j


def transposed_encode(curve: Callable[[int, int], int], i: int, j: int) -> int:
    """Order value of the transposed curve: the encoder applied to (j, i)."""
    return curve(j, i)
