"""Utility functions for evaluating pure functions over parameter grids.

Functions:
    handle_exception: Logs an exception raised while evaluating one grid item.
    fan_out: Maps a function over items, optionally on a thread pool, and
        returns the results in input order.
"""

from typing import (
    Callable,
    Iterable,
    List,
    TypeVar,
)
import concurrent.futures
import logging

__all__ = (
    "fan_out",
    "handle_exception",
)

T = TypeVar("T")
R = TypeVar("R")


def handle_exception(item, error: BaseException) -> None:
    """Log an exception raised while evaluating a grid item.

    The traceback is only logged when the root logger is at DEBUG level;
    otherwise the error message is logged alone.

    Args:
        item: The grid item whose evaluation failed.
        error: The exception that was raised.
    """
    if logging.getLogger().level == logging.DEBUG:
        logging.error("Evaluation failed for %r", item, exc_info=error)
    else:
        logging.error("Evaluation failed for %r: %s", item, error)


def fan_out(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Evaluate func on every item and return the results in input order.

    Args:
        func: A pure function of one grid item.
        items: The grid items.
        workers: Number of threads. With one worker the items are evaluated
            sequentially in the calling thread.

    Returns: A list holding func(item) for each item, in the order of items.

    Raises:
        Exception: The first exception raised by func, after it is logged.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        results = []
        for item in items:
            try:
                results.append(func(item))
            except Exception as e:
                handle_exception(item, e)
                raise
        return results
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, item) for item in items]
        results = []
        for item, future in zip(items, futures):
            try:
                results.append(future.result())
            except Exception as e:
                handle_exception(item, e)
                for pending in futures:
                    pending.cancel()
                raise
        return results
