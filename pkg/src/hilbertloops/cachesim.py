"""Fully associative LRU cache simulator over abstract memory traces.

Addresses are element-granularity integers; the cache holds fixed-size
blocks (address // block_size) and evicts the least recently used block.
Misses are exact, so the inclusion property holds: growing the capacity
never increases the miss count.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from math import ceil

import numpy as np

from ._compat import compiled, jit_active


@dataclass(frozen=True)
class CacheConfig:
    capacity_blocks: int
    block_size: int = 8

    def __post_init__(self):
        if self.capacity_blocks < 1:
            raise ValueError(f"capacity_blocks must be >= 1, got {self.capacity_blocks}")
        if self.block_size < 1 or self.block_size & (self.block_size - 1):
            raise ValueError(f"block_size must be a positive power of two, got {self.block_size}")


@dataclass(frozen=True)
class AccessTrace:
    """Finite sequence of element addresses plus the footprint they live in."""

    addresses: np.ndarray
    footprint: int

    @classmethod
    def from_addresses(cls, addresses, footprint: int | None = None) -> "AccessTrace":
        arr = np.asarray(addresses, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("trace addresses must be one-dimensional")
        if arr.size and arr.min() < 0:
            raise ValueError("trace addresses must be non-negative")
        top = int(arr.max()) + 1 if arr.size else 0
        if footprint is None:
            footprint = top
        elif footprint < top:
            raise ValueError(f"footprint {footprint} smaller than max address {top - 1}")
        return cls(arr, int(footprint))

    def __len__(self) -> int:
        return int(self.addresses.size)


@dataclass(frozen=True)
class MissReport:
    accesses: int
    misses: int


@dataclass(frozen=True)
class SweepPoint:
    fraction: float
    capacity_blocks: int
    misses: int
    accesses: int


def _lru_kernel(blocks, capacity, n_blocks):
    # exact LRU via lazy deletion: every touch pushes (stamp, block) onto a
    # queue; eviction pops until the head still matches the block's stamp
    total = blocks.shape[0]
    stamp = np.zeros(n_blocks, dtype=np.int64)
    resident = np.zeros(n_blocks, dtype=np.uint8)
    q_block = np.empty(total, dtype=np.int64)
    q_stamp = np.empty(total, dtype=np.int64)
    head = 0
    tail = 0
    size = 0
    misses = 0
    for t in range(total):
        b = blocks[t]
        now = t + 1
        if resident[b]:
            stamp[b] = now
            q_block[tail] = b
            q_stamp[tail] = now
            tail += 1
        else:
            misses += 1
            if size == capacity:
                while True:
                    ob = q_block[head]
                    ot = q_stamp[head]
                    head += 1
                    if resident[ob] and stamp[ob] == ot:
                        resident[ob] = 0
                        size -= 1
                        break
            resident[b] = 1
            stamp[b] = now
            size += 1
            q_block[tail] = b
            q_stamp[tail] = now
            tail += 1
    return misses


_lru_py_kernel = _lru_kernel
_lru_jit = compiled(_lru_kernel)


def _simulate_ordereddict(blocks, capacity: int) -> int:
    # independent pure-Python twin used as the fallback path and as a
    # cross-check against the array kernel
    cache: OrderedDict[int, None] = OrderedDict()
    misses = 0
    for b in blocks:
        b = int(b)
        if b in cache:
            cache.move_to_end(b)
        else:
            misses += 1
            if len(cache) == capacity:
                cache.popitem(last=False)
            cache[b] = None
    return misses


def simulate(config: CacheConfig, trace: AccessTrace, use_numba: bool | None = None) -> MissReport:
    """Exact miss count of the trace under a fully associative LRU cache."""
    blocks = trace.addresses >> int(np.log2(config.block_size))
    if jit_active(use_numba):
        n_blocks = (trace.footprint // config.block_size) + 1
        misses = int(_lru_jit(blocks, config.capacity_blocks, n_blocks))
    else:
        misses = _simulate_ordereddict(blocks, config.capacity_blocks)
    return MissReport(accesses=len(trace), misses=misses)


def sweep(trace: AccessTrace, fractions, block_size: int = 8) -> list[SweepPoint]:
    """Miss counts across capacities given as fractions of the footprint.

    Each fraction f is simulated with ceil(f * footprint / block_size)
    blocks of capacity.
    """
    points = []
    for fraction in fractions:
        if not 0.0 < fraction <= 1.0:
            raise ValueError(f"capacity fraction must be in (0, 1], got {fraction}")
        capacity = max(1, ceil(fraction * trace.footprint / block_size))
        report = simulate(CacheConfig(capacity, block_size), trace)
        points.append(SweepPoint(fraction, capacity, report.misses, report.accesses))
    return points


def sweep_csv(points: list[SweepPoint]) -> str:
    lines = ["fraction,misses,accesses"]
    lines += [f"{p.fraction:g},{p.misses},{p.accesses}" for p in points]
    return "\n".join(lines) + "\n"


def save_trace(trace: AccessTrace, path) -> None:
    """Write the trace as newline-delimited decimal addresses."""
    with open(path, "w") as fh:
        for addr in trace.addresses:
            fh.write(f"{int(addr)}\n")


def load_trace(path, footprint: int | None = None) -> AccessTrace:
    with open(path) as fh:
        addresses = [int(line) for line in fh if line.strip()]
    return AccessTrace.from_addresses(addresses, footprint)
