"""Ordered evaluation of independent work items on worker threads"""
import concurrent.futures
import os


def default_workers():
    """Number of workers used when `workers` is None"""
    return max(1, min(8, os.cpu_count() or 1))


def map_ordered(func, items, workers=1):
    """Apply `func` to every item and return results in input order

    Parameters
    ----------
    func : callable
        Function of one argument. It must only read shared state.
    items : iterable
        Work items.
    workers : int or None
        Number of worker threads; 1 evaluates inline and None uses
        `default_workers()`.

    Notes
    -----
    An exception raised by a work item is re-raised in the caller.
    """
    items = list(items)
    if workers is None:
        workers = default_workers()
    workers = int(workers)
    if workers < 1:
        raise ValueError("`workers` must be at least 1, got {}!".format(
            workers))
    if workers == 1 or len(items) <= 1:
        return [func(it) for it in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
