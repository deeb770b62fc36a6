"""
Packing greedy Monte Carlo: insieme massimale δ-separato di punti estratti.

I candidati vengono estratti a blocchi; il prefiltro contro i punti già
accettati è vettoriale (GridIndex.blocked), mentre l'accettazione dentro
il blocco resta seriale, nello stesso ordine di estrazione. Il risultato
coincide con quello dell'inserimento un candidato alla volta.
"""

from typing import NamedTuple, Optional

import numpy as np

from config import PACKING_BATCH_SIZE, PACKING_INDEX
from dimension.metric import Metric
from dimension.spatial_index import make_index
from logger.logger import get_logger
from sets.abstract_sampler import SetSampler
from utils.errors import ErrorCode, HeisKakeyaError

logger = get_logger('dimest')


class PackingResult(NamedTuple):
    count: int
    points: np.ndarray


def greedy_packing_count(sampler: SetSampler, delta: float, metric: Metric, stop_k: int,
                         rng_seed: Optional[int] = None, seed_points: Optional[np.ndarray] = None,
                         batch_size: int = PACKING_BATCH_SIZE, index_kind: str = PACKING_INDEX) -> PackingResult:
    """
    Estrae candidati dal campionatore e accetta quelli a distanza >= δ da tutti
    i punti accettati; si ferma dopo stop_k rifiuti consecutivi.

    Args:
        sampler: Insieme da campionare
        delta: Scala di separazione (> 0)
        metric: EUCLIDEAN o HEISENBERG
        stop_k: Rifiuti consecutivi prima di fermarsi (>= 1)
        rng_seed: Seed del generatore dei candidati
        seed_points: Punti pre-accettati (tipicamente il packing a una scala più grande)
        batch_size: Candidati per blocco
        index_kind: Indice spaziale per la metrica di Heisenberg ("sheared" o "euclidean")

    Returns:
        PackingResult: (numero di punti accettati, array (count, 3))

    Raises:
        HeisKakeyaError: delta <= 0, stop_k < 1
    """
    if not delta > 0:
        raise HeisKakeyaError(ErrorCode.INVALID_SCALE, 'dimest.greedy_packing_count', f"Delta must be > 0, got {delta}")
    if stop_k < 1:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'dimest.greedy_packing_count',
                              f"stop_k must be >= 1, got {stop_k}")

    rng = np.random.default_rng(rng_seed)
    index = make_index(metric, delta, sampler.bounds, index_kind)
    if seed_points is not None:
        index.add(seed_points)

    run = 0  # rifiuti consecutivi prima della posizione `last + 1` del blocco corrente
    drawn = 0
    while run < stop_k:
        candidates = sampler.draw_batch(batch_size, rng)
        drawn += batch_size
        free = np.flatnonzero(~index.blocked(candidates))

        accepted = np.empty((len(free), 3))
        n_acc = 0
        last = -1
        stopped = False
        for i in free:
            if run + (i - last - 1) >= stop_k:
                stopped = True
                break
            p = candidates[i]
            if n_acc and np.any(metric.distances(accepted[:n_acc], p) < delta):
                continue
            accepted[n_acc] = p
            n_acc += 1
            last = i
            run = 0

        index.add(accepted[:n_acc])
        if stopped:
            break
        run += batch_size - 1 - last

    logger.debug(f"Packing {sampler.label} at delta={delta:.5g} ({metric.value}): "
                 f"{len(index)} points, {drawn} candidates drawn")
    return PackingResult(len(index), index.points)
