"""Order-preserving map over a worker pool.

Callers derive all randomness per item before dispatch, so the result of
``parallel_map`` never depends on ``threads``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """Apply *fn* to every item, preserving input order.

    Args:
        fn: Function to apply. May be a closure; ``multiprocess`` pickles it
            with dill.
        items: Inputs.
        threads: Worker count. ``<= 1`` (or fewer than two items) runs inline.

    Returns:
        ``[fn(item) for item in items]``.
    """
    if threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    from multiprocess import Pool

    workers = min(threads, len(items))
    logger.debug("Dispatching %d items to %d workers", len(items), workers)
    with Pool(processes=workers) as pool:
        return list(pool.map(fn, items))
