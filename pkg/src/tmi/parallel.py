"""Deterministic parallel map for the per-degree verification sweeps.

Work items are independent; results are returned in input order, so the
output is identical whatever the worker count.  TMI_THREADS caps the
worker count; the default is serial execution.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        try:
            threads = int(os.environ.get("TMI_THREADS", "1"))
        except ValueError:
            threads = 1
    return max(1, threads)


def pmap(fn: Callable[[T], R], items: Sequence[T], threads: int | None = None) -> list[R]:
    """Map preserving input order; serial unless threads > 1."""
    threads = resolve_threads(threads)
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(threads, len(items))) as ex:
        return list(ex.map(fn, items))
