"""Deterministic fan-out used when assembling large operator matrices.

Results are always gathered in input order, so the thread count never
changes an answer, only (at best) the wall-clock time.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

_threads = 1


def set_threads(n: int) -> None:
    global _threads
    if n < 1:
        raise ValueError("thread count must be positive")
    _threads = int(n)


def get_threads() -> int:
    return _threads


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    items = list(items)
    if _threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_threads) as pool:
        return list(pool.map(fn, items))


def chunked(seq: list, nchunks: int) -> list[list]:
    if not seq:
        return []
    size = max(1, -(-len(seq) // nchunks))
    return [seq[i:i + size] for i in range(0, len(seq), size)]
