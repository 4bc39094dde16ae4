"""
Collection of shared utility classes and methods
"""
import logging
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from tqdm import tqdm

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

T = TypeVar("T")
R = TypeVar("R")


class AttrDict(dict):
    """
    AttrDict adds accessing stored keys as attributes to dict
    """
    def __getattr__(self, attr):
        try:
            return super().__getattr__(attr)
        except AttributeError:
            try:
                val = self[attr]
            except KeyError as e:
                raise AttributeError(e)
            if isinstance(val, dict):
                return AttrDict(val)
            else:
                return val

    def __setattr__(self, attr, value):
        if attr.startswith("_"):
            super().__setattr__(attr, value)
        else:
            raise NotImplementedError()


def make_bar_format(desc_width: int = 20, count_width: int = 0,
                    eta: bool = False) -> str:
    """Construct bar_format for tqdm

    Args:
      desc_width: minimum space allocated for description
      count_width: min space for counts
      eta: show eta to right of progress bar
    """
    left = '{{desc:<{dw}}} {{percentage:3.0f}}%'.format(dw=desc_width)
    right = ' {{n_fmt:>{cw}}} / {{total_fmt:<{cw}}}'.format(cw=count_width)
    if eta:
        right += ' ETA {remaining}'
    return left + '|{bar}|' + right


def progress(iterable: Iterable, desc: str, total: Optional[int] = None,
             logger: logging.Logger = log,
             loglevel: int = logging.INFO) -> Iterable:
    """Wrap ``iterable`` in a progress bar

    The bar is only shown if ``logger`` would emit messages at
    ``loglevel``.
    """
    return tqdm(iterable, desc=desc, total=total, leave=False,
                disable=logger.getEffectiveLevel() > loglevel,
                bar_format=make_bar_format(30, 5, eta=True))


def parallel_map(func: Callable[[T], R], items: Sequence[T],
                 jobs: int = 1, desc: Optional[str] = None,
                 chunksize: int = 1) -> List[R]:
    """Order preserving map, in worker processes if ``jobs > 1``

    ``func`` and the items must be picklable when running in parallel.
    Results come back in input order, so reductions done by the caller
    do not depend on ``jobs``.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        if desc:
            return [func(item) for item in progress(items, desc, len(items))]
        return [func(item) for item in items]
    log.debug("Mapping %i items over %i workers", len(items), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(func, items, chunksize=chunksize)
        if desc:
            results = progress(results, desc, len(items))
        return list(results)
