"""Deterministic fan-out of independent replicas.

Replicas are embarrassingly parallel: each owns its state and its Philox
stream, derived from ``(seed, replica)`` alone.  Results are concatenated
in replica order after all workers finish, so the output is byte-identical
for any worker count, including 1.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

__all__ = ["resolve_threads", "map_replicas"]


def resolve_threads(cli=None, config=None):
    """Worker count: CLI flag, then config, then RLAB_THREADS, then 1."""
    for value in (cli, config, os.environ.get("RLAB_THREADS")):
        if value is not None:
            count = int(value)
            if count < 1:
                raise ValueError("thread count must be at least 1")
            return count
    return 1


def _chunk(core, cfg, lo, hi):
    return [core(cfg, r) for r in range(lo, hi)]


def map_replicas(core, cfg, replicas, threads):
    """``[core(cfg, r) for r in range(replicas)]``, possibly in parallel."""
    if threads <= 1 or replicas < 4:
        return _chunk(core, cfg, 0, replicas)
    pieces = min(4 * threads, replicas)
    bounds = [replicas * i // pieces for i in range(pieces + 1)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_chunk, core, cfg, lo, hi)
                   for lo, hi in zip(bounds, bounds[1:])]
        parts = [f.result() for f in futures]
    return [item for part in parts for item in part]
