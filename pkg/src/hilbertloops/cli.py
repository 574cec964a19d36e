"""Command line front end: encode, decode, generate, bench.

Exit codes: 0 success, 2 usage error (argparse), 1 domain error.
All CSV output goes to stdout with a header row; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import functools
import sys

from . import cachesim, curves, kernels, nonsquare


@functools.lru_cache(maxsize=1)
def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertloops",
        description="space-filling curve conversions, loop generation, and cache benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="coordinate pair to order value")
    enc.add_argument("--curve", choices=("hilbert", "z", "canonic"), required=True)
    enc.add_argument("--i", type=int, required=True)
    enc.add_argument("--j", type=int, required=True)
    enc.add_argument("--n", type=int, help="grid columns (canonic only)")

    dec = sub.add_parser("decode", help="order value to coordinate pair")
    dec.add_argument("--curve", choices=("hilbert", "z", "canonic"), required=True)
    dec.add_argument("--h", type=int, required=True)
    dec.add_argument("--n", type=int, help="grid columns (canonic only)")

    gen = sub.add_parser("generate", help="emit a full traversal as CSV or SVG")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--shape", choices=("rect", "tri"), default="rect")
    gen.add_argument("--format", choices=("csv", "svg"), default="csv")

    ben = sub.add_parser("bench", help="cache-miss sweep of a kernel's access trace")
    ben.add_argument("kernel", choices=("matmul", "floyd"))
    ben.add_argument("--n", type=int, required=True)
    ben.add_argument("--orders", default="nested,hilbert")
    ben.add_argument("--fractions", default="0.05,0.1,0.2")
    ben.add_argument("--block-size", type=int, default=8)
    return parser


def _cmd_encode(args) -> int:
    if args.curve == "hilbert":
        h = curves.hilbert_encode(args.i, args.j)
    elif args.curve == "z":
        h = curves.z_encode(args.i, args.j)
    else:
        if args.n is None:
            raise ValueError("--curve canonic needs --n")
        h = curves.canonic_order(args.i, args.j, args.n)
    print(h)
    return 0


def _cmd_decode(args) -> int:
    if args.curve == "hilbert":
        i, j = curves.hilbert_decode(args.h)
    elif args.curve == "z":
        i, j = curves.z_decode(args.h)
    else:
        if args.n is None:
            raise ValueError("--curve canonic needs --n")
        if args.h < 0:
            raise ValueError("order value must be non-negative")
        i, j = divmod(args.h, args.n)
    print(f"{i} {j}")
    return 0


def _generate_points(args) -> list[tuple[int, int, int]]:
    if args.n < 1 or args.m < 1:
        raise ValueError("--n and --m must be positive")
    if args.shape == "tri":
        if args.n != args.m or args.n & (args.n - 1):
            raise ValueError("--shape tri needs n = m = a power of two")
        level = args.n.bit_length() - 1
        query = lambda q: nonsquare.triangle_query(q.level, q.anchor)
        return [(h, i, j) for i, j, h in nonsquare.hilbert_region(level, query)]
    return [(h, i, j) for h, (i, j) in enumerate(nonsquare.hilbert_rect(args.n, args.m))]


def _points_svg(points, n: int, m: int) -> str:
    # one polyline through cell centers, 10 units per cell
    coords = " ".join(f"{j * 10 + 5},{i * 10 + 5}" for _, i, j in points)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{m * 10}" height="{n * 10}" '
        f'viewBox="0 0 {m * 10} {n * 10}">\n'
        f'  <polyline fill="none" stroke="black" stroke-width="2" points="{coords}"/>\n'
        "</svg>\n"
    )


def _cmd_generate(args) -> int:
    points = [(h, i, j) for h, i, j in _generate_points(args)]
    if args.format == "svg":
        sys.stdout.write(_points_svg(points, args.n, args.m))
    else:
        print("h,i,j")
        for h, i, j in points:
            print(f"{h},{i},{j}")
    return 0


def _parse_orders(text: str, n: int) -> list[tuple[str, kernels.TraversalOrder]]:
    orders = []
    for name in text.split(","):
        name = name.strip()
        if name == "nested":
            orders.append((name, kernels.NESTED))
        elif name == "hilbert":
            orders.append((name, kernels.HILBERT))
        elif name.startswith("blocked"):
            _, _, s = name.partition(":")
            orders.append((name, kernels.blocked(int(s) if s else min(8, n))))
        else:
            raise ValueError(f"unknown traversal order {name!r}")
    if not orders:
        raise ValueError("--orders must list at least one order")
    return orders


def _cmd_bench(args) -> int:
    if args.n < 2:
        raise ValueError("--n must be at least 2")
    fractions = [float(f) for f in args.fractions.split(",") if f.strip()]
    if not fractions:
        raise ValueError("--fractions must list at least one fraction")
    print("order,fraction,misses,accesses")
    for name, order in _parse_orders(args.orders, args.n):
        if args.kernel == "matmul":
            trace = kernels.matmul_trace(args.n, args.n, args.n, order)
        else:
            trace = kernels.floyd_trace(args.n, order)
        for point in cachesim.sweep(trace, fractions, block_size=args.block_size):
            print(f"{name},{point.fraction:g},{point.misses},{point.accesses}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "encode": _cmd_encode,
        "decode": _cmd_decode,
        "generate": _cmd_generate,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
