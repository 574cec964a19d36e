import random

import pytest

from hilbertloops import curves
from hilbertloops.curves import (
    _DIGIT,
    _NEXT,
    _NEXT_INV,
    _PAIR_INV,
    _hilbert_encode_bits,
    _z_encode_bitloop,
    canonic_order,
    effective_length,
    hilbert_decode,
    hilbert_encode,
    transposed_encode,
    z_decode,
    z_encode,
)

RNG = random.Random(0xC0FFEE)


# --- z-order -----------------------------------------------------------


def test_z_encode_examples():
    assert z_encode(0, 0) == 0
    assert z_encode(1, 0) == 2
    assert z_encode(2, 3) == 13  # i=10, j=11 interleave to 1101


def test_z_decode_examples():
    assert z_decode(0) == (0, 0)
    assert z_decode(2) == (1, 0)
    assert z_decode(13) == (2, 3)


def test_z_matches_per_bit_loop_oracle():
    for _ in range(500):
        i, j = RNG.getrandbits(31), RNG.getrandbits(31)
        assert z_encode(i, j) == _z_encode_bitloop(i, j)


def test_z_matches_single_state_automaton():
    # the trivial one-state machine emits the digit 2*i_bit + j_bit per pair
    for _ in range(200):
        i, j = RNG.getrandbits(8), RNG.getrandbits(8)
        h = 0
        for bit in range(7, -1, -1):
            h = (h << 2) | (((i >> bit) & 1) << 1 | ((j >> bit) & 1))
        assert z_encode(i, j) == h


def test_z_roundtrip():
    for _ in range(500):
        i, j = RNG.getrandbits(31), RNG.getrandbits(31)
        assert z_decode(z_encode(i, j)) == (i, j)


# --- effective length --------------------------------------------------


def test_effective_length_examples():
    assert effective_length(3, 5) == 4
    assert effective_length(1, 1) == 2
    assert effective_length(16, 2) == 6
    assert effective_length(0, 0) == 2


def test_effective_length_is_the_stability_point():
    for _ in range(300):
        i, j = RNG.getrandbits(20), RNG.getrandbits(20)
        length = effective_length(i, j)
        stable = _hilbert_encode_bits(i, j, length)
        assert _hilbert_encode_bits(i, j, length + 2) == stable
        assert _hilbert_encode_bits(i, j, length + 4) == stable
        if length > 2:
            assert _hilbert_encode_bits(i, j, length - 2) != stable


# --- hilbert -----------------------------------------------------------


def test_hilbert_encode_examples():
    assert hilbert_encode(0, 0) == 0
    assert hilbert_encode(3, 3) == 10  # U-(1,1)->2, U-(1,1)->2
    assert hilbert_encode(0, 2) == 14  # U-(0,1)->3, C-(0,0)->2


def test_hilbert_2x2_grid_is_prefix_of_the_4x4_curve():
    # one-bit coordinates are padded to one full (0,0) pair, which lands in
    # state D; the 2x2 square is therefore the first quadrant of the 4x4
    # curve and (1,0) comes last, not second
    assert [hilbert_encode(i, j) for i, j in [(0, 0), (0, 1), (1, 1), (1, 0)]] == [0, 1, 2, 3]
    assert hilbert_encode(1, 0) == 3


def test_hilbert_decode_examples():
    assert hilbert_decode(0) == (0, 0)
    assert hilbert_decode(1) == (0, 1)
    assert hilbert_decode(3) == (1, 0)
    assert hilbert_decode(10) == (3, 3)
    assert hilbert_decode(14) == (0, 2)


def test_hilbert_roundtrip_random():
    for _ in range(500):
        i, j = RNG.getrandbits(31), RNG.getrandbits(31)
        assert hilbert_decode(hilbert_encode(i, j)) == (i, j)


@pytest.mark.parametrize("level", [0, 1, 2, 3, 4])
def test_hilbert_bijective_on_square(level):
    n = 1 << level
    values = {hilbert_encode(i, j) for i in range(n) for j in range(n)}
    assert values == set(range(n * n))


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_hilbert_adjacency(level):
    n = 1 << level
    cells = [hilbert_decode(h) for h in range(n * n)]
    for (i0, j0), (i1, j1) in zip(cells, cells[1:]):
        assert abs(i0 - i1) + abs(j0 - j1) == 1


def test_quadrant_contiguity():
    L = 3
    n = 1 << L
    values = [[hilbert_encode(i, j) for j in range(n)] for i in range(n)]
    for lev in range(L + 1):
        size = 1 << lev
        for bi in range(0, n, size):
            for bj in range(0, n, size):
                block = [values[i][j] for i in range(bi, bi + size) for j in range(bj, bj + size)]
                assert max(block) - min(block) == size * size - 1


def test_prefix_stability():
    for _ in range(200):
        i, j = RNG.getrandbits(12), RNG.getrandbits(12)
        length = effective_length(i, j)
        assert _hilbert_encode_bits(i, j, length) == _hilbert_encode_bits(i, j, length + 2)


# --- transition tables -------------------------------------------------


def test_table_outputs_are_permutations():
    for row in _DIGIT:
        assert sorted(row) == [0, 1, 2, 3]
    for row in _PAIR_INV:
        assert sorted(row) == [0, 1, 2, 3]


def test_inverse_tables_invert_the_forward_ones():
    for state in range(4):
        for pair in range(4):
            digit = _DIGIT[state][pair]
            assert _PAIR_INV[state][digit] == pair
            assert _NEXT_INV[state][digit] == _NEXT[state][pair]


# --- canonic and transposed -------------------------------------------


def test_canonic_order():
    assert canonic_order(0, 0, 4) == 0
    assert canonic_order(2, 3, 4) == 11
    assert canonic_order(1, 0, 7) == 7
    with pytest.raises(ValueError):
        canonic_order(1, 4, 4)


def test_transposed_encode():
    assert transposed_encode(hilbert_encode, 0, 0) == 0
    assert transposed_encode(z_encode, 1, 0) == z_encode(0, 1) == 1
    assert transposed_encode(hilbert_encode, 1, 0) == hilbert_encode(0, 1) == 1
    for _ in range(100):
        i, j = RNG.getrandbits(16), RNG.getrandbits(16)
        assert transposed_encode(hilbert_encode, i, j) == hilbert_encode(j, i)


# --- validation --------------------------------------------------------


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        z_encode(-1, 0)
    with pytest.raises(ValueError):
        hilbert_encode(0, -2)
    with pytest.raises(ValueError):
        hilbert_decode(-1)


def test_oversized_inputs_overflow():
    with pytest.raises(OverflowError):
        z_encode(1 << 31, 0)
    with pytest.raises(OverflowError):
        hilbert_encode(0, 1 << 31)
    with pytest.raises(OverflowError):
        hilbert_decode(1 << 62)
    with pytest.raises(OverflowError):
        z_decode(1 << 62)
    assert hilbert_encode((1 << 31) - 1, 0) >= 0  # 31 bits still fine
    assert hilbert_decode((1 << 62) - 1)
