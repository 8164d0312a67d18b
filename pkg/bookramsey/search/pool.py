"""Fan a level of the search out over worker processes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import structlog

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def split_batches(items: Sequence[T], parts: int) -> List[List[T]]:
    """Split ``items`` into at most ``parts`` contiguous, near-equal batches."""
    if not items:
        return []
    parts = max(1, min(parts, len(items)))
    size, extra = divmod(len(items), parts)
    batches: List[List[T]] = []
    cursor = 0
    for i in range(parts):
        end = cursor + size + (1 if i < extra else 0)
        batches.append(list(items[cursor:end]))
        cursor = end
    return batches


def run_batches(fn: Callable[[List[T]], R], batches: List[List[T]], workers: int) -> List[R]:
    """Apply ``fn`` to every batch; results come back in batch order.

    ``fn`` must be a module-level function so it pickles for worker processes.
    """
    if workers <= 1 or len(batches) <= 1:
        return [fn(batch) for batch in batches]
    logger.debug("Dispatching batches", batches=len(batches), workers=workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, batches))
