"""
Esecuzione parallela dei task indipendenti (per theta, per c, per fetta).
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np

from config import THREADS

T = TypeVar('T')
R = TypeVar('R')


def split_seeds(seed: int, n: int) -> List[int]:
    """
    Deriva n seed indipendenti da un seed di partenza.
    Il risultato non dipende dall'ordine di esecuzione dei task.
    """
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]


def parallel_map(fn: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """
    Applica fn ad ogni elemento usando un pool di thread.
    I risultati sono nello stesso ordine degli input.

    Args:
        fn: Funzione da applicare
        items: Elementi
        max_workers: Numero massimo di worker (default: THREADS da config)
    """
    items = list(items)
    workers = min(max_workers or THREADS, max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
