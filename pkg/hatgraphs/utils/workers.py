from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

import structlog

from hatgraphs.config import settings

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(function: Callable[[T], R], items: Iterable[T], jobs: int | None = None) -> list[R]:
    """Map over items in worker processes, results in input order.

    With one job (the default) everything runs in-process, which keeps logs
    and timings reproducible. ``function`` must be a module-level callable.
    """
    items = list(items)
    jobs = jobs if jobs is not None else settings.JOBS
    if jobs <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    workers = min(jobs, len(items))
    logger.debug("worker_pool_started", workers=workers, tasks=len(items))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items))


def first_success(function: Callable[[T], R | None], items: Sequence[T], jobs: int | None = None) -> R | None:
    """First non-None result in input order, whatever order the workers finish in."""
    jobs = jobs if jobs is not None else settings.JOBS
    if jobs <= 1:
        for item in items:
            result = function(item)
            if result is not None:
                return result
        return None
    for result in parallel_map(function, items, jobs):
        if result is not None:
            return result
    return None
