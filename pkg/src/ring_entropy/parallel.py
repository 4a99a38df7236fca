"""Ordered parallel map over independent grid cells."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "RING_ENTROPY_THREADS"


def max_workers() -> int:
    """Worker count, capped by ``RING_ENTROPY_THREADS`` when set."""
    default = min(8, os.cpu_count() or 1)
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def ordered_map(func, items):
    """``[func(x) for x in items]`` evaluated on a thread pool.

    Output order always follows input order, whatever the completion
    order of the workers.
    """
    items = list(items)
    workers = max_workers()
    if workers == 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
