from __future__ import annotations

from collections.abc import Sequence
from functools import partial
from logging import getLogger
from typing import Callable, TypeVar

import anyio
from anyio import CapacityLimiter, create_task_group, to_thread
from exceptiongroup import BaseExceptionGroup

from magicdistill.config import MAGICDISTILL_THREADS

_I = TypeVar("_I")
_R = TypeVar("_R")

logger = getLogger(__name__)


def run_all(
    function: Callable[[_I], _R], items: Sequence[_I], threads: int | None = None
) -> list[_R]:
    """Apply ``function`` to every item on worker threads, keeping the input order

    With one thread the items are evaluated in order on the calling thread. If any
    call fails, the first failure collected by the task group is raised.
    """
    threads = MAGICDISTILL_THREADS.current if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    logger.debug("Dispatching %d items to %d threads", len(items), threads)
    try:
        return anyio.run(partial(_run_all, function, items, threads))
    except BaseExceptionGroup as egroup:
        raise _first_error(egroup) from None


async def _run_all(
    function: Callable[[_I], _R], items: Sequence[_I], threads: int
) -> list[_R]:
    results: dict[int, _R] = {}
    limiter = CapacityLimiter(threads)

    async def run_one(index: int, item: _I) -> None:
        results[index] = await to_thread.run_sync(function, item, limiter=limiter)

    async with create_task_group() as task_group:
        for index, item in enumerate(items):
            task_group.start_soon(run_one, index, item)
    return [results[index] for index in range(len(items))]


def _first_error(egroup: BaseExceptionGroup) -> BaseException:
    error: BaseException = egroup
    while isinstance(error, BaseExceptionGroup):
        error = error.exceptions[0]
    return error
