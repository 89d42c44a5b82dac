"""Deterministic worker-pool helper.

All enumerations in this package are pure maps over index streams, so any
worker count yields the same multiset of results; callers re-sort
canonically, making output independent of `workers`.  The default worker
count comes from ORDCURVES_WORKERS, else 1 (serial).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def resolve_workers(requested=None) -> int:
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("ORDCURVES_WORKERS")
    if env:
        return max(1, int(env))
    return 1


def pmap(fn, items, workers=1, chunksize=64):
    """Ordered map; serial when workers <= 1, process pool otherwise."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
