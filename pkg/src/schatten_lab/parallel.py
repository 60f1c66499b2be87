"""Deterministic thread-pool map."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import thread_count


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent stream per (seed, keys); does not depend on scheduling."""
    return np.random.default_rng([int(seed), *[int(k) for k in keys]])


def pmap(fn, items, threads: int = 0) -> list:
    """``[fn(x) for x in items]`` on a thread pool; output order follows input order."""
    items = list(items)
    n = min(thread_count(threads), max(1, len(items)))
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
