"""Hilbert-style traversal beyond power-of-two squares.

Two mechanisms are provided:

* an overlay grid: a K x K power-of-two grid of elementary cells, each
  2..4 rows by 2..4 columns, covering an arbitrary n x m rectangle.  The
  overlay cells are walked in Hilbert order and each cell is traversed by
  a tiny serpentine movement program, keeping the one-unit-step property
  of the curve across cell boundaries (``iter_fur``);
* quadrant jump-over: depth-first descent over the bisection quadrants of
  a power-of-two square, pruning whole quadrants that a region predicate
  rules out, while reporting the true Hilbert value of every visited cell
  (``iter_fgf``).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Callable, Iterator

from .curves import HilbertState, _NEXT_INV, _PAIR_INV
from .lindenmayer import _RULES

Point = tuple[int, int]


class AspectRatioError(ValueError):
    """No overlay grid exists for this rectangle (too elongated)."""


class InconsistentPredicate(RuntimeError):
    """A jump-over predicate contradicted itself between parent and child."""


class Verdict(IntEnum):
    SKIP = 0
    PARTIAL = 1
    FULL = 2


@dataclass(frozen=True)
class QuadrantQuery:
    """A 2**level square quadrant anchored at its top-left cell."""

    level: int
    anchor: Point


QueryFn = Callable[[QuadrantQuery], Verdict]


# ---------------------------------------------------------------------------
# overlay grid planning


@dataclass(frozen=True)
class OverlayGrid:
    """K x K overlay of elementary cells covering an n x m rectangle."""

    K: int
    row_extents: tuple[int, ...]
    col_extents: tuple[int, ...]
    row_offsets: tuple[int, ...]
    col_offsets: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.row_offsets[-1]

    @property
    def m(self) -> int:
        return self.col_offsets[-1]


def _split(total: int, parts: int) -> tuple[int, ...]:
    # as even as possible, larger extents first
    base, rem = divmod(total, parts)
    return (base + 1,) * rem + (base,) * (parts - rem)


def _offsets(extents: tuple[int, ...]) -> tuple[int, ...]:
    out = [0]
    for e in extents:
        out.append(out[-1] + e)
    return tuple(out)


def overlay_plan(n: int, m: int) -> OverlayGrid:
    """Overlay grid with the largest power-of-two K, or K=1 single cell.

    K >= 2 requires 2K <= min(n, m) and 4K >= max(n, m) so that every
    extent lands in {2, 3, 4}; rectangles up to 4 x 4 degenerate to a
    single cell.  Raises AspectRatioError when no such K exists, which
    happens past a roughly 2:1 aspect ratio (and for a few milder ratios
    that fall between powers of two, like 9 x 6); use
    :func:`iter_fur_tiled` to cover such shapes with independent strips.
    """
    if n < 1 or m < 1:
        raise ValueError(f"grid sides must be positive, got {n}x{m}")
    lo, hi = min(n, m), max(n, m)
    if lo >= 4:
        # largest power of two K with 2K <= lo; smaller K only shrink 4K
        K = 1 << (lo // 2).bit_length() - 1
        if 4 * K >= hi:
            rows = _split(n, K)
            cols = _split(m, K)
            return OverlayGrid(K, rows, cols, _offsets(rows), _offsets(cols))
    if n <= 4 and m <= 4:
        return OverlayGrid(1, (n,), (m,), (0, n), (0, m))
    raise AspectRatioError(
        f"no overlay grid for {n}x{m}: needs m/2 < n < 2m; "
        "iter_fur_tiled() covers it with independent strips"
    )


# ---------------------------------------------------------------------------
# serpentine cell paths

# movement coding shared with the direction register: 0 right, 1 down,
# 2 left, 3 up
_MOVE_DELTA = ((0, 1), (1, 0), (0, -1), (-1, 0))


@lru_cache(maxsize=None)
def _cell_path(rows: int, cols: int, start: Point, end: Point) -> tuple[Point, ...] | None:
    """One unit-step path visiting every cell of rows x cols exactly once,
    from start to end, or None.  Deterministic first-found DFS."""
    total = rows * cols
    if total == 1:
        return (start,) if start == end else None
    if start == end:
        return None
    path = [start]
    seen = {start}

    def dfs(p: Point) -> bool:
        if len(path) == total:
            return p == end
        if p == end:
            return False
        for di, dj in _MOVE_DELTA:
            q = (p[0] + di, p[1] + dj)
            if 0 <= q[0] < rows and 0 <= q[1] < cols and q not in seen:
                path.append(q)
                seen.add(q)
                if dfs(q):
                    return True
                path.pop()
                seen.remove(q)
        return False

    return tuple(path) if dfs(start) else None


def _start_corner(state: int, rows: int, cols: int) -> Point:
    return (0, 0) if state in (0, 1) else (rows - 1, cols - 1)


def _end_corner(state: int, rows: int, cols: int) -> Point:
    return (0, cols - 1) if state in (0, 3) else (rows - 1, 0)


# ---------------------------------------------------------------------------
# nano programs: a cell path packed into one 64-bit word


@dataclass(frozen=True)
class NanoProgram:
    """Movement program of one elementary cell, packed into 64 bits.

    Bit layout: bits 0..5 hold the number of movements (height*width - 1),
    movement t sits at bits 6+2t..7+2t using the direction coding
    0 right / 1 down / 2 left / 3 up.
    """

    height: int
    width: int
    orientation: HilbertState
    packed: int

    def movements(self) -> tuple[int, ...]:
        count = self.packed & 0x3F
        return tuple((self.packed >> (6 + 2 * t)) & 3 for t in range(count))

    def points(self) -> tuple[Point, ...]:
        i, j = _start_corner(self.orientation, self.height, self.width)
        out = [(i, j)]
        for move in self.movements():
            di, dj = _MOVE_DELTA[move]
            i += di
            j += dj
            out.append((i, j))
        return tuple(out)


def _pack_moves(moves: list[int]) -> int:
    word = len(moves)
    for t, move in enumerate(moves):
        word |= move << (6 + 2 * t)
    return word


def _canonical_path(rows: int, cols: int, state: int) -> tuple[Point, ...]:
    start = _start_corner(state, rows, cols)
    end = _end_corner(state, rows, cols)
    path = _cell_path(rows, cols, start, end)
    if path is not None:
        return path
    # no corner-to-corner path exists (mixed-parity cell); take the nearest
    # reachable point, scanning the two edges incident to the end corner
    candidates = sorted(
        (p for p in _edge_points(rows, cols, end) if p != end),
        key=lambda p: (abs(p[0] - end[0]) + abs(p[1] - end[1]), p),
    )
    for cand in candidates:
        path = _cell_path(rows, cols, start, cand)
        if path is not None:
            return path
    raise RuntimeError(f"no serpentine path for {rows}x{cols} cell")


def _edge_points(rows: int, cols: int, corner: Point) -> list[Point]:
    pts = {(corner[0], y) for y in range(cols)}
    pts |= {(x, corner[1]) for x in range(rows)}
    return sorted(pts)


def nano_program(height: int, width: int, orientation: HilbertState) -> NanoProgram:
    """Packed movement program for a height x width cell in the given
    orientation, entering and exiting at the pattern's corners (or the
    nearest feasible edge point when the exact corner is unreachable)."""
    if not 1 <= height <= 4 or not 1 <= width <= 4:
        raise ValueError(f"cell sides must be in 1..4, got {height}x{width}")
    state = int(HilbertState(orientation))
    path = _canonical_path(height, width, state)
    moves = []
    for (i0, j0), (i1, j1) in zip(path, path[1:]):
        moves.append(_MOVE_DELTA.index((i1 - i0, j1 - j0)))
    return NanoProgram(height, width, HilbertState(orientation), _pack_moves(moves))


def write_nano_table(path) -> None:
    """Serialize all 64 nano programs as little-endian 64-bit words,
    indexed by ((height-1)*4 + (width-1))*4 + orientation."""
    with open(path, "wb") as fh:
        for height in range(1, 5):
            for width in range(1, 5):
                for state in HilbertState:
                    fh.write(struct.pack("<Q", nano_program(height, width, state).packed))


def read_nano_table(path) -> list[int]:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) != 64 * 8:
        raise ValueError(f"nano table must be 512 bytes, got {len(data)}")
    return [word for (word,) in struct.iter_unpack("<Q", data)]


# ---------------------------------------------------------------------------
# FUR iteration: overlay cells in Hilbert order, serpentine inside cells


def _overlay_cells(K: int) -> list[tuple[int, int, int]]:
    """Overlay cells in visit order as (I, J, state).

    The K x K overlay is walked as the block level of a curve one level
    deeper, so the composite of cells degenerates to the standard curve
    when every cell is 2 x 2: start symbol U when log2(K) is odd, D when
    it is even.
    """
    kappa = K.bit_length() - 1
    cells: list[tuple[int, int, int]] = []
    pos = [0, 0]

    def walk(state: int, lvl: int) -> None:
        if lvl == 0:
            cells.append((pos[0], pos[1], state))
            return
        rule = _RULES[state]
        walk(rule[0], lvl - 1)
        pos[0] += rule[1]
        pos[1] += rule[2]
        walk(rule[3], lvl - 1)
        pos[0] += rule[4]
        pos[1] += rule[5]
        walk(rule[6], lvl - 1)
        pos[0] += rule[7]
        pos[1] += rule[8]
        walk(rule[9], lvl - 1)

    walk(0 if kappa & 1 else 1, kappa)
    return cells


def _exit_edge(rows: int, cols: int, step: Point) -> list[Point]:
    if step == (1, 0):
        return [(rows - 1, y) for y in range(cols)]
    if step == (-1, 0):
        return [(0, y) for y in range(cols)]
    if step == (0, 1):
        return [(x, cols - 1) for x in range(rows)]
    return [(x, 0) for x in range(rows)]


def _entry_after(exit_point: Point, step: Point, rows: int, cols: int) -> Point:
    # local entry point of the next cell reached by one unit step; vertical
    # neighbours share widths and horizontal ones share heights, so the
    # transverse offset carries over unchanged
    if step == (1, 0):
        return (0, exit_point[1])
    if step == (-1, 0):
        return (rows - 1, exit_point[1])
    if step == (0, 1):
        return (exit_point[0], 0)
    return (exit_point[0], cols - 1)


def _min_odd_split(total: int, parts: int) -> tuple[int, ...]:
    # descending extents using at most one odd value; the single 3 of an
    # odd side is the only odd x odd cell the overlay can form, and its
    # entry colour always works out
    if parts == 1:
        return (total,)
    if total & 1:
        fours = (total - 2 * parts - 1) // 2
        return (4,) * fours + (3,) + (2,) * (parts - 1 - fours)
    fours = (total - 2 * parts) // 2
    return (4,) * fours + (2,) * (parts - fours)


def _parity_feasible(cells, row_ext, row_off, col_ext, col_off) -> bool:
    # crossing an odd x odd cell is the only way the checkerboard colour of
    # the walk's entry points flips, so the k-th such cell in block order
    # must start on colour k mod 2
    k = 0
    for I, J, _ in cells:
        if row_ext[I] & 1 and col_ext[J] & 1:
            if ((row_off[I] + col_off[J]) & 1) != (k & 1):
                return False
            k += 1
    return True


def _dp_plan(cells, row_ext, row_off, col_ext, col_off):
    """Pick entry/exit points for every overlay cell so the whole walk is
    one unit-step path; returns (origin_i, origin_j, local path) per cell,
    or None when the arrangement admits no such walk."""
    count = len(cells)
    shapes = [(row_ext[I], col_ext[J]) for I, J, _ in cells]
    steps = [
        (cells[t + 1][0] - cells[t][0], cells[t + 1][1] - cells[t][1])
        for t in range(count - 1)
    ]

    # forward pass over feasible entry points; candidate exits are ordered
    # by distance from the pattern's end corner so exact corners win
    entries: list[dict[Point, tuple[Point, Point]]] = [{} for _ in range(count)]
    entries[0][(0, 0)] = ((0, 0), (0, 0))
    for t in range(count - 1):
        rows, cols = shapes[t]
        corner = _end_corner(cells[t][2], rows, cols)
        candidates = sorted(
            _exit_edge(rows, cols, steps[t]),
            key=lambda p: (abs(p[0] - corner[0]) + abs(p[1] - corner[1]), p),
        )
        nrows, ncols = shapes[t + 1]
        for entry in entries[t]:
            for exit_point in candidates:
                if _cell_path(rows, cols, entry, exit_point) is None:
                    continue
                nxt = _entry_after(exit_point, steps[t], nrows, ncols)
                entries[t + 1].setdefault(nxt, (entry, exit_point))
        if not entries[t + 1]:
            return None

    rows, cols = shapes[-1]
    corner = _end_corner(cells[-1][2], rows, cols)
    last_candidates = sorted(
        ((x, y) for x in range(rows) for y in range(cols)),
        key=lambda p: (abs(p[0] - corner[0]) + abs(p[1] - corner[1]), p),
    )
    final = None
    for entry in entries[-1]:
        for exit_point in last_candidates:
            if _cell_path(rows, cols, entry, exit_point) is not None:
                final = (entry, exit_point)
                break
        if final:
            break
    if final is None:
        return None

    chosen: list[tuple[Point, Point]] = [final] * count
    entry = final[0]
    for t in range(count - 1, 0, -1):
        prev_entry, prev_exit = entries[t][entry]
        chosen[t - 1] = (prev_entry, prev_exit)
        entry = prev_entry

    plan = []
    for t, (I, J, _) in enumerate(cells):
        rows, cols = shapes[t]
        path = _cell_path(rows, cols, chosen[t][0], chosen[t][1])
        plan.append((row_off[I], col_off[J], path))
    return plan


def _extent_orders(total: int, parts: int) -> list[tuple[int, ...]]:
    # candidate arrangements for one dimension: the even split (larger
    # extents first) and its reverse, then the at-most-one-odd split with
    # the odd extent slid across every position
    even = _split(total, parts)
    out = [even, even[::-1]]
    minodd = _min_odd_split(total, parts)
    if 3 in minodd:
        at = minodd.index(3)
        rest = minodd[:at] + minodd[at + 1 :]
        for pos in range(parts):
            out.append(rest[:pos] + (3,) + rest[pos:])
        out.append(minodd[::-1])
    else:
        out.append(minodd)
        out.append(minodd[::-1])
    seen = set()
    uniq = []
    for ext in out:
        if ext not in seen:
            seen.add(ext)
            uniq.append(ext)
    return uniq


@lru_cache(maxsize=512)
def _plan_fur(n: int, m: int) -> tuple[tuple[int, int, tuple[Point, ...]], ...]:
    """Continuity-preserving traversal plan for the n x m rectangle.

    The even extent split is preferred; when its odd x odd cells land on
    the wrong checkerboard colours, or when mid-edge crossings into
    odd-width cells wedge the walk, other extent arrangements are tried
    (reversals, then splits with at most one odd extent per dimension)."""
    grid = overlay_plan(n, m)
    cells = _overlay_cells(grid.K)
    for rows in _extent_orders(n, grid.K):
        row_off = _offsets(rows)
        for cols in _extent_orders(m, grid.K):
            col_off = _offsets(cols)
            if not _parity_feasible(cells, rows, row_off, cols, col_off):
                continue
            plan = _dp_plan(cells, rows, row_off, cols, col_off)
            if plan is not None:
                return tuple(plan)
    raise RuntimeError(f"no continuous overlay traversal for {n}x{m}")


def iter_fur(n: int, m: int, visit: Callable[[int, int], None]) -> None:
    """Visit every cell of the n x m rectangle exactly once, in overlay
    Hilbert order, with consecutive visits one unit step apart.

    Degenerates to the standard curve when n = m is a power of two.
    Raises AspectRatioError for rectangles no overlay grid covers.
    """
    for oi, oj, path in _plan_fur(n, m):
        for pi, pj in path:
            visit(oi + pi, oj + pj)


def hilbert_rect(n: int, m: int) -> Iterator[Point]:
    """Generator form of :func:`iter_fur`: yields (i, j) pairs."""
    for oi, oj, path in _plan_fur(n, m):
        for pi, pj in path:
            yield oi + pi, oj + pj


def _strip_sizes(fixed: int, total: int) -> tuple[int, ...]:
    # widest strip an overlay can cover next to a side of length `fixed`
    if fixed >= 2:
        widest = 4 * (1 << (fixed // 2).bit_length() - 1)
    else:
        widest = 4
    parts = -(-total // widest)
    while parts <= total:
        sizes = _split(total, parts)
        try:
            for size in set(sizes):
                overlay_plan(fixed, size)
        except AspectRatioError:
            parts += 1
            continue
        return sizes
    raise AspectRatioError(f"cannot tile strips of height {fixed} over {total}")


def iter_fur_tiled(n: int, m: int, visit: Callable[[int, int], None]) -> None:
    """Like :func:`iter_fur` but covers any rectangle by placing feasible
    strips side by side.  Each strip is a connected curve; continuity is
    not preserved across strip seams."""
    try:
        iter_fur(n, m, visit)
        return
    except AspectRatioError:
        pass
    if m >= n:
        offset = 0
        for width in _strip_sizes(n, m):
            base = offset
            iter_fur(n, width, lambda i, j: visit(i, base + j))
            offset += width
    else:
        offset = 0
        for height in _strip_sizes(m, n):
            base = offset
            iter_fur(height, m, lambda i, j: visit(base + i, j))
            offset += height


def hilbert_rect_tiled(n: int, m: int) -> Iterator[Point]:
    out: list[Point] = []
    iter_fur_tiled(n, m, lambda i, j: out.append((i, j)))
    return iter(out)


# ---------------------------------------------------------------------------
# FGF iteration: quadrant jump-over with true Hilbert values


Visit3 = Callable[[int, int, int], None]


def _emit_quadrant(level, i0, j0, state, base, visit):
    if level == 0:
        visit(i0, j0, base)
        return
    half = 1 << (level - 1)
    span = 1 << (2 * (level - 1))
    for digit in range(4):
        pair = _PAIR_INV[state][digit]
        _emit_quadrant(
            level - 1,
            i0 + (pair >> 1) * half,
            j0 + (pair & 1) * half,
            _NEXT_INV[state][digit],
            base + digit * span,
            visit,
        )


def iter_fgf(level: int, query: QueryFn, visit: Visit3) -> None:
    """Visit the cells of the 2**level square that the predicate keeps,
    in strictly increasing true Hilbert value.

    ``query`` is asked about whole bisection quadrants top-down; quadrants
    it answers SKIP for are jumped over without per-cell work, FULL ones
    are enumerated without further queries, PARTIAL ones are split.  Each
    visited cell receives its order value as produced by
    ``curves.hilbert_encode``.  Raises InconsistentPredicate when a
    contradiction between parent and child verdicts surfaces.
    """
    if level < 0:
        raise ValueError(f"level must be non-negative, got {level}")

    def walk(lvl: int, i0: int, j0: int, state: int, base: int) -> Verdict:
        verdict = query(QuadrantQuery(lvl, (i0, j0)))
        if verdict == Verdict.SKIP:
            return verdict
        if lvl == 0:
            visit(i0, j0, base)
            return verdict
        if verdict == Verdict.FULL:
            _emit_quadrant(lvl, i0, j0, state, base, visit)
            return verdict
        half = 1 << (lvl - 1)
        span = 1 << (2 * (lvl - 1))
        seen_full = seen_skip = 0
        for digit in range(4):
            pair = _PAIR_INV[state][digit]
            child = walk(
                lvl - 1,
                i0 + (pair >> 1) * half,
                j0 + (pair & 1) * half,
                _NEXT_INV[state][digit],
                base + digit * span,
            )
            seen_full += child == Verdict.FULL
            seen_skip += child == Verdict.SKIP
        if seen_skip == 4 or seen_full == 4:
            raise InconsistentPredicate(
                f"level {lvl} quadrant at ({i0},{j0}) is PARTIAL but all four"
                f" children agree on {'SKIP' if seen_skip == 4 else 'FULL'}"
            )
        return verdict

    # start state matching hilbert_encode's even-padding convention
    walk(level, 0, 0, level & 1, 0)


def hilbert_region(level: int, query: QueryFn) -> Iterator[tuple[int, int, int]]:
    """Generator form of :func:`iter_fgf`: yields (i, j, h) triples."""
    out: list[tuple[int, int, int]] = []
    iter_fgf(level, query, lambda i, j, h: out.append((i, j, h)))
    return iter(out)


def triangle_query(level: int, anchor: Point) -> Verdict:
    """Verdict of the strict upper triangle {(i, j): i < j} for a quadrant."""
    i0, j0 = anchor
    span = 1 << level
    if i0 % span or j0 % span:
        raise ValueError(f"anchor {anchor} not aligned to 2**{level}")
    if i0 + span - 1 < j0:
        return Verdict.FULL
    if i0 >= j0 + span - 1:
        return Verdict.SKIP
    return Verdict.PARTIAL
