import struct

import pytest

from hilbertloops import lindenmayer
from hilbertloops.curves import HilbertState
from hilbertloops.nonsquare import (
    AspectRatioError,
    InconsistentPredicate,
    QuadrantQuery,
    Verdict,
    hilbert_rect,
    hilbert_region,
    iter_fgf,
    iter_fur,
    iter_fur_tiled,
    nano_program,
    overlay_plan,
    read_nano_table,
    triangle_query,
    write_nano_table,
)


def fur_sequence(n, m):
    out = []
    iter_fur(n, m, lambda i, j: out.append((i, j)))
    return out


def unit_steps(seq):
    return all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(seq, seq[1:]))


# --- overlay planning ----------------------------------------------------


def test_overlay_plan_6x6():
    grid = overlay_plan(6, 6)
    assert grid.K == 2
    assert grid.row_extents == (3, 3)
    assert grid.col_extents == (3, 3)


def test_overlay_plan_8x8_degenerates_to_pure_grid():
    grid = overlay_plan(8, 8)
    assert grid.K == 4
    assert grid.row_extents == (2, 2, 2, 2)


def test_overlay_plan_4x9_errors():
    with pytest.raises(AspectRatioError):
        overlay_plan(4, 9)


def test_overlay_plan_small_single_cell():
    grid = overlay_plan(3, 3)
    assert grid.K == 1
    assert grid.row_extents == (3,)
    grid = overlay_plan(1, 4)
    assert (grid.n, grid.m) == (1, 4)


def test_overlay_plan_picks_largest_feasible_k():
    for n, m in [(6, 6), (8, 8), (4, 4), (17, 20), (64, 64), (5, 8)]:
        grid = overlay_plan(n, m)
        feasible = [1] if n <= 4 and m <= 4 else []
        K = 2
        while 2 * K <= min(n, m):
            if 4 * K >= max(n, m):
                feasible.append(K)
            K <<= 1
        assert grid.K == max(feasible)


def test_overlay_plan_extent_invariants():
    for n, m in [(6, 6), (13, 16), (31, 32), (64, 63)]:
        grid = overlay_plan(n, m)
        assert sum(grid.row_extents) == n
        assert sum(grid.col_extents) == m
        assert all(2 <= e <= 4 for e in grid.row_extents)
        assert grid.row_offsets[-1] == n and grid.col_offsets[-1] == m


def test_overlay_plan_rejects_degenerate_sides():
    with pytest.raises(ValueError):
        overlay_plan(0, 5)


# --- nano programs --------------------------------------------------------


def test_nano_single_cell_is_empty():
    assert nano_program(1, 1, HilbertState.U).movements() == ()


def test_nano_2x2_u_is_the_base_pattern():
    # down, right, up in the 0=right/1=down/2=left/3=up coding
    assert nano_program(2, 2, HilbertState.U).movements() == (1, 0, 3)


def test_nano_2x3_d():
    prog = nano_program(2, 3, HilbertState.D)
    assert len(prog.movements()) == 5
    pts = prog.points()
    assert pts[0] == (0, 0)
    end = pts[-1]
    assert abs(end[0] - 1) + abs(end[1] - 0) <= 1  # lower-left corner region


def test_nano_covers_every_cell_for_all_shapes():
    for height in range(1, 5):
        for width in range(1, 5):
            for state in HilbertState:
                prog = nano_program(height, width, state)
                pts = prog.points()
                assert len(pts) == height * width
                assert set(pts) == {(i, j) for i in range(height) for j in range(width)}
                assert unit_steps(pts) or len(pts) == 1
                assert prog.packed < 1 << 42
                assert (prog.packed & 0x3F) == height * width - 1


def test_nano_table_roundtrip(tmp_path):
    path = tmp_path / "nano.bin"
    write_nano_table(path)
    words = read_nano_table(path)
    assert len(words) == 64
    for height in range(1, 5):
        for width in range(1, 5):
            for state in HilbertState:
                idx = ((height - 1) * 4 + (width - 1)) * 4 + int(state)
                assert words[idx] == nano_program(height, width, state).packed


def test_nano_table_is_deterministic_little_endian(tmp_path):
    a, b = tmp_path / "a.bin", tmp_path / "b.bin"
    write_nano_table(a)
    write_nano_table(b)
    assert a.read_bytes() == b.read_bytes()
    raw = a.read_bytes()
    # entry 0 is the motionless 1x1 U cell
    assert raw[:8] == b"\x00" * 8
    idx = ((2 - 1) * 4 + (2 - 1)) * 4 + int(HilbertState.U)
    word = struct.unpack_from("<Q", raw, idx * 8)[0]
    assert word == nano_program(2, 2, HilbertState.U).packed


def test_nano_rejects_out_of_range():
    with pytest.raises(ValueError):
        nano_program(5, 2, HilbertState.U)
    with pytest.raises(ValueError):
        nano_program(2, 0, HilbertState.U)


# --- FUR ------------------------------------------------------------------


def test_fur_3x3():
    seq = fur_sequence(3, 3)
    assert len(seq) == 9
    assert set(seq) == {(i, j) for i in range(3) for j in range(3)}
    assert unit_steps(seq)


def test_fur_3x3_regression():
    assert fur_sequence(3, 3) == [
        (0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (1, 1), (1, 0), (2, 0),
    ]


@pytest.mark.parametrize("level", [0, 1, 2, 3, 4])
def test_fur_degenerates_to_standard_curve(level):
    n = 1 << level
    expected = [(i, j) for i, j, _ in lindenmayer.hilbert(n)]
    assert fur_sequence(n, n) == expected


def test_fur_6x5():
    seq = fur_sequence(6, 5)
    assert len(seq) == 30
    assert len(set(seq)) == 30
    assert unit_steps(seq)


def test_fur_coverage_and_continuity_sweep():
    for n in range(1, 21):
        for m in range(1, 21):
            try:
                seq = fur_sequence(n, m)
            except AspectRatioError:
                continue
            assert len(seq) == n * m, (n, m)
            assert len(set(seq)) == n * m, (n, m)
            assert unit_steps(seq), (n, m)
            assert seq[0] == (0, 0), (n, m)


def test_fur_propagates_aspect_ratio_error():
    with pytest.raises(AspectRatioError):
        iter_fur(4, 9, lambda i, j: None)


def test_generator_matches_callback():
    assert list(hilbert_rect(5, 7)) == fur_sequence(5, 7)


# --- tiled wrapper ---------------------------------------------------------


@pytest.mark.parametrize("n,m", [(4, 9), (2, 50), (1, 17), (5, 100), (100, 5), (1, 1)])
def test_tiled_covers_everything_once(n, m):
    out = []
    iter_fur_tiled(n, m, lambda i, j: out.append((i, j)))
    assert len(out) == n * m
    assert set(out) == {(i, j) for i in range(n) for j in range(m)}


def test_tiled_passthrough_when_feasible():
    out = []
    iter_fur_tiled(6, 6, lambda i, j: out.append((i, j)))
    assert out == fur_sequence(6, 6)


# --- FGF --------------------------------------------------------------------


def test_triangle_query_examples():
    assert triangle_query(1, (0, 2)) == Verdict.FULL
    assert triangle_query(1, (2, 0)) == Verdict.SKIP
    assert triangle_query(2, (0, 0)) == Verdict.PARTIAL


def test_triangle_query_rejects_misaligned_anchor():
    with pytest.raises(ValueError):
        triangle_query(1, (1, 2))


def test_triangle_query_matches_brute_force():
    for level in range(3):
        span = 1 << level
        for i0 in range(0, 8, span):
            for j0 in range(0, 8, span):
                inside = [i < j for i in range(i0, i0 + span) for j in range(j0, j0 + span)]
                if all(inside):
                    expected = Verdict.FULL
                elif not any(inside):
                    expected = Verdict.SKIP
                else:
                    expected = Verdict.PARTIAL
                assert triangle_query(level, (i0, j0)) == expected, (level, i0, j0)


def triangle(q: QuadrantQuery) -> Verdict:
    return triangle_query(q.level, q.anchor)


def test_fgf_always_full_is_the_whole_curve():
    triples = list(hilbert_region(2, lambda q: Verdict.FULL))
    assert triples == list(lindenmayer.hilbert(4))


def test_fgf_triangle_level2():
    triples = list(hilbert_region(2, triangle))
    assert {(i, j) for i, j, _ in triples} == {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    assert [h for _, _, h in triples] == sorted(h for _, _, h in triples)
    from hilbertloops.curves import hilbert_encode

    assert all(h == hilbert_encode(i, j) for i, j, h in triples)


def test_fgf_skip_everything():
    assert list(hilbert_region(3, lambda q: Verdict.SKIP)) == []


def test_fgf_level0():
    assert list(hilbert_region(0, lambda q: Verdict.FULL)) == [(0, 0, 0)]
    assert list(hilbert_region(0, lambda q: Verdict.SKIP)) == []


def test_fgf_rejects_negative_level():
    with pytest.raises(ValueError):
        iter_fgf(-1, lambda q: Verdict.FULL, lambda *a: None)


def test_fgf_detects_all_skip_contradiction():
    def lying(q: QuadrantQuery) -> Verdict:
        return Verdict.PARTIAL if q.level > 0 else Verdict.SKIP

    with pytest.raises(InconsistentPredicate):
        iter_fgf(1, lying, lambda *a: None)


def test_fgf_detects_all_full_contradiction():
    def lying(q: QuadrantQuery) -> Verdict:
        return Verdict.PARTIAL if q.level > 0 else Verdict.FULL

    with pytest.raises(InconsistentPredicate):
        iter_fgf(1, lying, lambda *a: None)


def test_fgf_prunes_instead_of_enumerating():
    # a single kept cell in a 64x64 square needs queries along one root-leaf
    # path plus the pruned siblings, far below the 4096 cells
    target = (37, 22)
    calls = 0

    def pointish(q: QuadrantQuery) -> Verdict:
        nonlocal calls
        calls += 1
        span = 1 << q.level
        i0, j0 = q.anchor
        if i0 <= target[0] < i0 + span and j0 <= target[1] < j0 + span:
            return Verdict.FULL if q.level == 0 else Verdict.PARTIAL
        return Verdict.SKIP

    triples = list(hilbert_region(6, pointish))
    assert [(i, j) for i, j, _ in triples] == [target]
    assert calls <= 4 * 6 + 1
