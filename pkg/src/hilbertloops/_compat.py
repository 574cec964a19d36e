"""Optional numba acceleration for the hot kernels.

Every compiled kernel has a pure-Python twin (the same function object,
uncompiled).  Set ``HILBERTLOOPS_DISABLE_NUMBA=1`` to force the fallback
path even when numba is installed; this is also what the benchmark in
``benchmarks/numba_vs_python.py`` toggles to compare both paths.
"""

import os

try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False
    _njit = None


def _disabled_by_env() -> bool:
    value = os.environ.get("HILBERTLOOPS_DISABLE_NUMBA", "")
    return value.strip().lower() in ("1", "true", "yes", "on")


NUMBA_ENABLED = HAVE_NUMBA and not _disabled_by_env()


def compiled(fn):
    """njit(cache=True) when the numba path is active, identity otherwise."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(fn)
    return fn


def jit_active(override=None) -> bool:
    """Resolve a per-call use_numba override against the package default."""
    return NUMBA_ENABLED if override is None else bool(override)
