"""
Traccia discreta della disuguaglianza di co-area per la mappa 1-Lipschitz
(x, y, t) ↦ x: somma di Riemann dei packing delle fette contro il packing
dell'insieme intero, entrambi nella metrica di Korányi.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from config import COAREA_N_SLICES
from dimension import Metric, PackingParams, ScaleLadder, greedy_packing_count
from logger.logger import get_logger
from sets.abstract_sampler import SetSampler
from utils.errors import ErrorCode, HeisKakeyaError
from utils.parallel import parallel_map, split_seeds

logger = get_logger('experiments')

_OPERATION = 'experiments.coarea_check'


@dataclass
class CoareaResult:
    """lhs = Σⱼ P_δ(F ∩ fetta_j)·δ^α·Δy, rhs = P_δ(F)·δ^(α+1)."""

    delta: float
    alpha: float
    lhs: float
    rhs: float
    slice_counts: List[int] = field(default_factory=list)
    bulk_count: int = 0

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else float('inf')

    def csv_row(self) -> dict:
        return {'delta': self.delta, 'lhs': self.lhs, 'rhs': self.rhs, 'ratio': self.ratio}

    def to_dict(self) -> dict:
        return {**self.csv_row(), 'alpha': self.alpha, 'slice_counts': list(self.slice_counts),
                'bulk_count': self.bulk_count}


def coarea_check(F: SetSampler, alpha: float, delta: float, slab: Optional[Tuple[float, float]] = None,
                 n_slices: int = COAREA_N_SLICES, params: Optional[PackingParams] = None) -> CoareaResult:
    """
    Confronta i due lati della co-area alla scala δ.

    Le fette hanno larghezza euclidea δ in x e sono centrate nei punti medi
    yⱼ di una griglia uniforme di n_slices celle su [y_lo, y_hi]. Una fetta
    senza punti contribuisce 0.

    Args:
        F: Insieme
        alpha: Esponente delle fette (>= 0)
        delta: Scala (> 0)
        slab: (y_lo, y_hi); default: estensione in x della bounding box di F
        n_slices: Numero di fette (>= 2)
        params: Parametri di packing

    Raises:
        HeisKakeyaError: parametri non validi, y_hi <= y_lo, intervallo disgiunto da F
    """
    if alpha < 0:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, _OPERATION, f"alpha must be >= 0, got {alpha}")
    if not delta > 0:
        raise HeisKakeyaError(ErrorCode.INVALID_SCALE, _OPERATION, f"Delta must be > 0, got {delta}")
    if n_slices < 2:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, _OPERATION, f"Need n_slices >= 2, got {n_slices}")
    if slab is None:
        slab = (F.bounds.lo[0], F.bounds.hi[0])
    y_lo, y_hi = float(slab[0]), float(slab[1])
    if not y_hi > y_lo:
        raise HeisKakeyaError(ErrorCode.EMPTY_SLAB, _OPERATION, f"Empty slab range [{y_lo}, {y_hi}]")
    if not F.bounds.overlaps_x(y_lo - delta / 2.0, y_hi + delta / 2.0):
        raise HeisKakeyaError(ErrorCode.EMPTY_SLAB, _OPERATION,
                              f"Slab range [{y_lo}, {y_hi}] does not meet {F.label}")

    params = params or PackingParams()
    step = (y_hi - y_lo) / n_slices
    centers = y_lo + (np.arange(n_slices) + 0.5) * step
    seeds = split_seeds(params.seed, n_slices + 1)

    def slice_count(item) -> int:
        y, seed = item
        piece = F.restrict_x(y - delta / 2.0, y + delta / 2.0)
        if piece is None:
            return 0
        return greedy_packing_count(piece, delta, Metric.HEISENBERG, params.stop_k, seed,
                                    batch_size=params.batch_size, index_kind=params.index_kind).count

    slice_counts = parallel_map(slice_count, list(zip(centers.tolist(), seeds[:-1])))
    bulk = greedy_packing_count(F, delta, Metric.HEISENBERG, params.stop_k, seeds[-1],
                                batch_size=params.batch_size, index_kind=params.index_kind).count

    lhs = float(sum(slice_counts)) * delta ** alpha * step
    rhs = float(bulk) * delta ** (alpha + 1.0)
    logger.debug(f"Co-area {F.label} at delta={delta:.5g}: lhs={lhs:.4g}, rhs={rhs:.4g}")
    return CoareaResult(delta, alpha, lhs, rhs, slice_counts, bulk)


def coarea_sweep(F: SetSampler, alpha: float, ladder: ScaleLadder, slab: Optional[Tuple[float, float]] = None,
                 n_slices: int = COAREA_N_SLICES, params: Optional[PackingParams] = None) -> List[CoareaResult]:
    """coarea_check ad ogni scala della ladder, con seed derivati da params.seed."""
    params = params or PackingParams()
    seeds = split_seeds(params.seed, len(ladder))
    results = [coarea_check(F, alpha, delta, slab, n_slices, params.with_seed(seed))
               for delta, seed in zip(ladder, seeds)]
    logger.info(f"Co-area sweep of {F.label}: ratios {[round(r.ratio, 3) for r in results]}")
    return results
