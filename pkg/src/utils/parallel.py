"""
Order-preserving parallel map capped by FRACSLICE_THREADS
"""

import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.config import Config  # noqa: E402

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = None) -> List[R]:
    """Apply fn to every item; results come back in input order"""
    items = list(items)
    workers = min(threads or Config.get_threads(), max(1, len(items)))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
