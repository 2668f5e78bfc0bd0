"""Worker pool and order-stable reductions."""

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from typing import TypeVar

import numpy as np
from joblib import Parallel, delayed

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R],
    items: Sequence[T],
    threads: int = 1,
    deterministic: bool = False,
) -> list[R]:
    """Apply ``func`` to every item, preserving input order.

    Args:
        func: Pure function of one item.
        items: Work items.
        threads: Worker count; 1 runs inline.
        deterministic: Force a single in-order evaluation sequence.

    Returns:
        Results in the order of ``items``.
    """
    if threads <= 1 or deterministic or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug("dispatching %d items to %d workers", len(items), threads)
    return list(Parallel(n_jobs=threads, prefer="threads")(delayed(func)(item) for item in items))


def chunk_ranges(start: int, stop: int, chunks: int) -> list[tuple[int, int]]:
    """Split [start, stop) into at most ``chunks`` contiguous half-open ranges."""
    if stop <= start:
        return []
    chunks = max(1, min(chunks, stop - start))
    edges = np.linspace(start, stop, chunks + 1).round().astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def compensated_sum(values: Iterable[complex] | np.ndarray) -> complex:
    """Error-free summation of real or complex values (separate real/imag passes)."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    if arr.size == 0:
        return 0.0
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))
    return math.fsum(arr.tolist())
