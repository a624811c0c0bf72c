"""Order-preserving bounded parallel execution for provider calls."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def bounded_map(fn: Callable[[T], R], items: Sequence[T], max_workers: int) -> list[R]:
    """Apply ``fn`` to every item, at most ``max_workers`` in flight.

    Results come back in input order regardless of completion order; the
    first exception propagates after in-flight work drains.
    """
    items = list(items)
    if not items:
        return []
    if max_workers <= 1 or len(items) == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))
