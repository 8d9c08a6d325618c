"""Order-preserving thread-pool map shared by grid evaluations."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def worker_count(requested: int | None = None) -> int:
    """Worker threads: ``requested``, else ``LIE_AIRY_THREADS``, else the CPU count."""
    if requested is None:
        env = os.environ.get("LIE_AIRY_THREADS")
        requested = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(requested))


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """``[func(x) for x in items]``, possibly in parallel; results keep input order."""
    items = list(items)
    w = min(worker_count(workers), max(1, len(items)))
    if w == 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=w) as pool:
        return list(pool.map(func, items))
