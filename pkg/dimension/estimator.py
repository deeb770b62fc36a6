"""
Stima della dimensione: packing greedy su tutta la scala di delta e fit log-log.
"""

from dataclasses import dataclass, replace
from typing import Optional

from config import DEFAULT_SEED, DEFAULT_STOP_K, PACKING_BATCH_SIZE, PACKING_INDEX
from dimension.fit import DimEstimate, fit_scaling_exponent
from dimension.metric import Metric
from dimension.packing import greedy_packing_count
from dimension.scale_ladder import ScaleLadder
from logger.logger import get_logger
from sets.abstract_sampler import SetSampler
from utils.parallel import split_seeds

logger = get_logger('dimest')


@dataclass(frozen=True)
class PackingParams:
    """Parametri del packing condivisi da tutti gli esperimenti."""

    stop_k: int = DEFAULT_STOP_K
    seed: int = DEFAULT_SEED
    batch_size: int = PACKING_BATCH_SIZE
    index_kind: str = PACKING_INDEX

    def with_seed(self, seed: int) -> 'PackingParams':
        return replace(self, seed=seed)

    def to_dict(self) -> dict:
        return {'stop_k': self.stop_k, 'seed': self.seed, 'batch_size': self.batch_size, 'index': self.index_kind}


def estimate_dimension(sampler: SetSampler, ladder: ScaleLadder, metric: Metric,
                       params: Optional[PackingParams] = None) -> DimEstimate:
    """
    Esegue greedy_packing_count dalla scala più grande alla più piccola.
    Ogni scala parte dai punti accettati alla scala precedente, quindi i
    conteggi sono non decrescenti. Deterministico dato params.seed.

    Args:
        sampler: Insieme da stimare
        ladder: Scala di delta
        metric: EUCLIDEAN o HEISENBERG
        params: Parametri di packing (default: PackingParams())

    Returns:
        DimEstimate: conteggi e retta stimata
    """
    params = params or PackingParams()
    seeds = split_seeds(params.seed, len(ladder))

    counts = []
    points = None
    for delta, seed in zip(ladder, seeds):
        count, points = greedy_packing_count(sampler, delta, metric, params.stop_k, seed,
                                             seed_points=points, batch_size=params.batch_size,
                                             index_kind=params.index_kind)
        counts.append(count)

    estimate = fit_scaling_exponent(ladder.deltas, counts, metric, sampler.label, params.seed)
    logger.debug(f"{sampler.label} ({metric.value}): counts={counts}, slope={estimate.slope:.4f}, r2={estimate.r2:.4f}")
    return estimate
