"""Ordered thread-pool map; worker count capped by ``SFFBOUND_MAX_WORKERS``."""
import os
from concurrent.futures import ThreadPoolExecutor


def max_workers():
    env = os.environ.get("SFFBOUND_MAX_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def ordered_map(fn, items):
    """``[fn(x) for x in items]``, possibly in parallel, results in input order."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
