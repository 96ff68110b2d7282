import os
from concurrent.futures import ThreadPoolExecutor


def worker_count(workers=None):
    """Resolve the sweep worker cap; ``QME_THREADS`` overrides the CPU count."""
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("QME_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def parallel_map(func, items, workers=None):
    """Ordered map over ``items``; runs inline when a single worker is allowed."""
    items = list(items)
    n = min(worker_count(workers), len(items))
    if n <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items))
