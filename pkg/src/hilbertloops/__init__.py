"""Space-filling curve loops and cache-behaviour tooling.

The package covers coordinate <-> order-value conversion for the Hilbert
and Z-order curves, constant-overhead full-grid Hilbert iteration,
traversal of non-square rectangles and predicate-defined regions, a fully
associative LRU cache simulator, and matmul / Floyd-Warshall kernels that
can emit their memory access traces for it.
"""

from ._compat import HAVE_NUMBA, NUMBA_ENABLED
from .cachesim import AccessTrace, CacheConfig, MissReport, SweepPoint, load_trace, save_trace, simulate, sweep
from .curves import (
    HilbertState,
    canonic_order,
    effective_length,
    hilbert_decode,
    hilbert_encode,
    transposed_encode,
    z_decode,
    z_encode,
)
from .kernels import (
    FLOYD_INF,
    HILBERT,
    NESTED,
    DimensionMismatch,
    NegativeCycleError,
    TraversalOrder,
    blocked,
    floyd_trace,
    floyd_warshall,
    matmul,
    matmul_trace,
)
from .lindenmayer import (
    count_recursive_calls,
    generate_recursive,
    hilbert,
    hilbert_sequence,
    iter_nonrecursive,
    trailing_zeros,
)
from .nonsquare import (
    AspectRatioError,
    InconsistentPredicate,
    NanoProgram,
    OverlayGrid,
    QuadrantQuery,
    Verdict,
    hilbert_rect,
    hilbert_rect_tiled,
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

__version__ = "0.1.0"

__all__ = [
    "AccessTrace",
    "AspectRatioError",
    "CacheConfig",
    "DimensionMismatch",
    "FLOYD_INF",
    "HAVE_NUMBA",
    "HILBERT",
    "HilbertState",
    "InconsistentPredicate",
    "MissReport",
    "NESTED",
    "NUMBA_ENABLED",
    "NanoProgram",
    "NegativeCycleError",
    "OverlayGrid",
    "QuadrantQuery",
    "SweepPoint",
    "TraversalOrder",
    "Verdict",
    "blocked",
    "canonic_order",
    "count_recursive_calls",
    "effective_length",
    "floyd_trace",
    "floyd_warshall",
    "generate_recursive",
    "hilbert",
    "hilbert_decode",
    "hilbert_encode",
    "hilbert_rect",
    "hilbert_rect_tiled",
    "hilbert_region",
    "hilbert_sequence",
    "iter_fgf",
    "iter_fur",
    "iter_fur_tiled",
    "iter_nonrecursive",
    "load_trace",
    "matmul",
    "matmul_trace",
    "nano_program",
    "overlay_plan",
    "read_nano_table",
    "save_trace",
    "simulate",
    "sweep",
    "trailing_zeros",
    "transposed_encode",
    "triangle_query",
    "write_nano_table",
    "z_decode",
    "z_encode",
]
