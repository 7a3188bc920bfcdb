import multiprocessing as mp
import os
import typing

__all__ = [
    'default_jobs',
    'parallel_map'
]

T = typing.TypeVar('T')
R = typing.TypeVar('R')

def default_jobs() -> int:
    return os.cpu_count() or 1

def parallel_map(func: typing.Callable[[T], R],
                 items: typing.Iterable[T],
                 jobs: typing.Optional[int] = 1
) -> typing.List[R]:
    """Applies `func` to every item, in order, over a pool of `jobs` processes.

    Results are gathered by index, so the output does not depend on `jobs`.
    With `jobs <= 1` everything runs in the calling process. `func` and the items
    must be picklable when `jobs > 1`, and `func` should not raise: workers report
    failures in their results.
    """

    items = list(items)

    if jobs is None:
        jobs = default_jobs()

    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    jobs      = min(jobs, len(items))
    chunksize = max(1, len(items) // (4 * jobs))

    with mp.Pool(jobs) as pool:
        return pool.map(func, items, chunksize)
