"""
Esperimento di proiezione: dimensione euclidea delle proiezioni scalari
di un insieme K sulle direzioni γ(θ) = (cos θ, sin θ, 1)/√2.
Per quasi ogni θ ci si aspetta min{dim K, 1}.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from config import MARSTRAND_THETAS
from dimension import DimEstimate, Metric, PackingParams, ScaleLadder, estimate_dimension
from duality.cone_geometry import gamma_theta
from logger.logger import get_logger
from sets.abstract_sampler import SetSampler
from sets.derived_samplers import ProjectedSampler
from utils.errors import ErrorCode, HeisKakeyaError
from utils.parallel import parallel_map, split_seeds

logger = get_logger('experiments')

# Distanza ammessa dalla previsione min{dim K, 1}
SLOPE_TOLERANCE = 0.15


@dataclass
class ProjectionEstimate:
    theta: float
    estimate: DimEstimate

    def csv_row(self) -> dict:
        return {'param': self.theta, 'slope': self.estimate.slope, 'r2': self.estimate.r2,
                'n_counts': len(self.estimate.counts)}


def marstrand_thetas(n: int = MARSTRAND_THETAS) -> List[float]:
    """Angoli θ_k = 2π(k + ½)/n, lontani dalle direzioni degli assi."""
    if n < 1:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'experiments.marstrand_experiment', f"Need n >= 1 thetas, got {n}")
    return [2.0 * math.pi * (k + 0.5) / n for k in range(n)]


def marstrand_experiment(K: SetSampler, thetas: Sequence[float], ladder: ScaleLadder,
                         params: Optional[PackingParams] = None) -> List[ProjectionEstimate]:
    """
    Per ogni θ stima la dimensione euclidea di w ↦ ⟨γ(θ), w⟩ sui punti di K.
    Le proiezioni sono riscalate su [0, 1] prima del packing.

    Args:
        K: Insieme da proiettare
        thetas: Angoli (non vuoto)
        ladder: Scala di delta
        params: Parametri di packing; ogni θ riceve un seed derivato da params.seed

    Returns:
        List[ProjectionEstimate]: una stima per θ, nello stesso ordine
    """
    thetas = [float(t) for t in thetas]
    if not thetas:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'experiments.marstrand_experiment', "No theta given")
    params = params or PackingParams()
    seeds = split_seeds(params.seed, len(thetas))

    def run(item) -> ProjectionEstimate:
        theta, seed = item
        sampler = ProjectedSampler(K, gamma_theta(theta), normalize=True,
                                   label=f"{K.label}@theta={theta:.4f}", rng_seed=seed)
        estimate = estimate_dimension(sampler, ladder, Metric.EUCLIDEAN, params.with_seed(seed))
        logger.debug(f"theta={theta:.4f}: slope={estimate.slope:.4f}")
        return ProjectionEstimate(theta, estimate)

    results = parallel_map(run, list(zip(thetas, seeds)))
    logger.info(f"Projection sweep of {K.label}: {len(results)} directions, "
                f"median slope {np.median([r.estimate.slope for r in results]):.4f}")
    return results


def fraction_within(results: Sequence[ProjectionEstimate], expected: float,
                    tolerance: float = SLOPE_TOLERANCE) -> float:
    """Frazione di direzioni con |slope − expected| <= tolerance."""
    if not results:
        return 0.0
    hits = sum(1 for r in results if abs(r.estimate.slope - expected) <= tolerance)
    return hits / len(results)
