from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        return os.cpu_count() or 1
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return workers


def pmap(func: Callable[[T], R], items: Iterable[T], workers: int | None = 1) -> list[R]:
    """Ordered map, optionally over a process pool.

    Results come back in input order, so the output never depends on the
    worker count. ``func`` must be picklable (module level).
    """
    items = list(items)
    workers = min(resolve_workers(workers), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunk))
