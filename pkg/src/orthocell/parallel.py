"""Optional process-level parallelism, capped by ORTHOCELL_THREADS."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable


def worker_count() -> int:
    raw = os.environ.get("ORTHOCELL_THREADS", "")
    try:
        cap = int(raw)
    except ValueError:
        cap = 1
    return max(1, min(cap, os.cpu_count() or 1))


def pmap(fn: Callable, items: Iterable) -> list:
    """Ordered map; runs in a process pool only when more than one worker is allowed."""
    items = list(items)
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
