"""
Pipeline del bound di dimensione per una famiglia di Kakeya:

    (i)   scelta di c0: massima lunghezza coperta dalle pendenze π₂(L(E, c0))
    (ii)  divisione di L(E, c0) per attraversamento dei piani x = c0 ∓ ¼
    (iii) B = π₁₂₃ della parte tenuta
    (iv)  per c nella fetta di larghezza ¼: dimensione euclidea delle altezze
          {⟨(−c, −c²/2, 1), v⟩ : v ∈ B}, raddoppiata (asse t)
    (v)   bound finale = 1 + mediana dei bound delle fette (co-area)
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from config import PIPELINE_C_GRID, PIPELINE_DELTA_MAX, PIPELINE_DELTA_MIN, PIPELINE_LEVELS, PIPELINE_N_C
from dimension import DimEstimate, Metric, PackingParams, ScaleLadder, estimate_dimension
from duality.cone_geometry import dual_height
from duality.line_space import ProjectionAxes, project_family, restrict_family
from heisenberg.lines import SQRT3, Chart, CodeFamily, SlabSide, slab_crossing
from logger.logger import get_logger
from sets.derived_samplers import FinitePointSampler
from utils.errors import ErrorCode, HeisKakeyaError
from utils.parallel import parallel_map, split_seeds

logger = get_logger('pipeline')

_OPERATION = 'experiments.kakeya_dimension_pipeline'

ASSEMBLY_NOTE = "final_bound = 1 + median over c of slice_dim_bound, slice_dim_bound = 2 x height-set slope"


@dataclass
class SliceEstimate:
    c: float
    height_dim: DimEstimate
    slice_dim_bound: float

    def to_dict(self) -> dict:
        return {'c': self.c, 'height_dim': self.height_dim.to_dict(), 'slice_dim_bound': self.slice_dim_bound}

    def csv_row(self) -> dict:
        return {'param': self.c, 'slope': self.height_dim.slope, 'r2': self.height_dim.r2,
                'n_counts': len(self.height_dim.counts)}


@dataclass
class PipelineReport:
    c0: float
    side: SlabSide
    crossing_ratio: float
    per_c: List[SliceEstimate]
    final_bound: float
    params: dict = field(default_factory=dict)
    seed: int = 0
    delta_b: float = 0.0
    c0_scan: List[dict] = field(default_factory=list)
    note: str = ASSEMBLY_NOTE

    def to_dict(self) -> dict:
        return {
            'c0': self.c0,
            'side': self.side.value,
            'crossing_ratio': self.crossing_ratio,
            'per_c': [entry.to_dict() for entry in self.per_c],
            'final_bound': self.final_bound,
            'params': self.params,
            'seed': self.seed,
            'delta_b': self.delta_b,
            'c0_scan': self.c0_scan,
            'note': self.note,
        }

    def csv_rows(self) -> List[dict]:
        return [entry.csv_row() for entry in self.per_c]


def pipeline_ladder() -> ScaleLadder:
    """Scala per gli insiemi di altezze (diametro 1): 0.1 ... 0.1·2⁻⁵."""
    return ScaleLadder.geometric(PIPELINE_DELTA_MAX, PIPELINE_DELTA_MIN, PIPELINE_LEVELS)


def covered_length(slopes: np.ndarray, delta_b: float) -> float:
    """Lunghezza dell'unione degli intervalli [b − δ_b, b + δ_b]."""
    if len(slopes) == 0:
        return 0.0
    starts = np.sort(np.asarray(slopes, dtype=float)) - delta_b
    total = 0.0
    cur_lo, cur_hi = starts[0], starts[0] + 2.0 * delta_b
    for lo in starts[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo = lo
        cur_hi = lo + 2.0 * delta_b
    return float(total + cur_hi - cur_lo)


def c0_candidates(family: CodeFamily, c_grid: int) -> np.ndarray:
    """Punti medi di c_grid celle sull'inviluppo degli intervalli x dei codici utilizzabili."""
    usable = [code for code in family if code.chart is Chart.X_PARAM and abs(code.b) < SQRT3]
    if not usable:
        raise HeisKakeyaError(ErrorCode.EMPTY_FAMILY, _OPERATION, "Family has no X_PARAM code with |b| < sqrt(3)")
    lo = min(code.interval[0] for code in usable)
    hi = max(code.interval[1] for code in usable)
    width = (hi - lo) / c_grid
    return lo + (np.arange(c_grid) + 0.5) * width


def _scan_c0(family: CodeFamily, c_grid: int, delta_b: float):
    scan = []
    best, best_score = None, -1.0
    for c in c0_candidates(family, c_grid):
        restricted = restrict_family(family, float(c))
        score = covered_length(project_family(restricted, ProjectionAxes.P2), delta_b)
        scan.append({'c0': float(c), 'size': len(restricted), 'covered_length': score})
        if len(restricted) > 0 and score > best_score:
            best, best_score = (float(c), restricted), score
    if best is None:
        raise HeisKakeyaError(ErrorCode.EMPTY_FAMILY, _OPERATION, f"Empty restriction at all {c_grid} grid points")
    return best[0], best[1], scan


def _split_by_crossing(restricted: CodeFamily, c0: float):
    sides = [slab_crossing(code, c0) for code in restricted]
    right = [code for code, side in zip(restricted, sides) if side in (SlabSide.RIGHT, SlabSide.BOTH)]
    left = [code for code, side in zip(restricted, sides) if side in (SlabSide.LEFT, SlabSide.BOTH)]
    if len(right) >= len(left):
        return SlabSide.RIGHT, restricted.subfamily(right)
    return SlabSide.LEFT, restricted.subfamily(left)


def kakeya_dimension_pipeline(family: CodeFamily, c_grid: int = PIPELINE_C_GRID,
                              ladder: Optional[ScaleLadder] = None, params: Optional[PackingParams] = None,
                              n_c: int = PIPELINE_N_C) -> PipelineReport:
    """
    Esegue la pipeline completa su una famiglia di codici.

    Args:
        family: Famiglia con almeno un codice X_PARAM con |b| < √3
        c_grid: Numero di candidati per c0
        ladder: Scala per gli insiemi di altezze (default: pipeline_ladder())
        params: Parametri di packing
        n_c: Numero di valori di c nella fetta

    Returns:
        PipelineReport

    Raises:
        HeisKakeyaError: parametri non validi, restrizione vuota ovunque
    """
    if c_grid < 1 or n_c < 1:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, _OPERATION, f"Need c_grid >= 1 and n_c >= 1, got {c_grid}, {n_c}")
    ladder = ladder or pipeline_ladder()
    params = params or PackingParams()
    delta_b = 2.0 * SQRT3 / max(64, len(family))

    # (i) c0
    c0, restricted, scan = _scan_c0(family, c_grid, delta_b)

    # (ii) lato dell'attraversamento
    side, kept = _split_by_crossing(restricted, c0)
    crossing_ratio = len(kept) / len(restricted)
    logger.debug(f"c0={c0:.4f}: {len(restricted)} codes, side={side.value}, ratio={crossing_ratio:.3f}")

    # (iii) insieme dei codici
    B = project_family(kept, ProjectionAxes.P123)

    # (iv) altezze per c nella fetta
    if side is SlabSide.RIGHT:
        cs = np.linspace(c0, c0 + 0.25, n_c)
    else:
        cs = np.linspace(c0 - 0.25, c0, n_c)
    seeds = split_seeds(params.seed, n_c)

    def run(item) -> SliceEstimate:
        c, seed = item
        heights = dual_height(B, c)
        low, diameter = heights.min(), heights.max() - heights.min()
        if diameter > 0:
            heights = (heights - low) / diameter
        sampler = FinitePointSampler.on_line(heights, label=f"heights@c={c:.4f}", rng_seed=seed)
        estimate = estimate_dimension(sampler, ladder, Metric.EUCLIDEAN, params.with_seed(seed))
        return SliceEstimate(float(c), estimate, 2.0 * estimate.slope)

    per_c = parallel_map(run, list(zip(cs.tolist(), seeds)))

    # (v) co-area
    final_bound = 1.0 + float(np.median([entry.slice_dim_bound for entry in per_c]))
    logger.info(f"Pipeline on {family.label}: c0={c0:.4f}, side={side.value}, final_bound={final_bound:.4f}")

    return PipelineReport(
        c0=c0, side=side, crossing_ratio=crossing_ratio, per_c=per_c, final_bound=final_bound,
        params={'c_grid': c_grid, 'n_c': n_c, 'ladder': list(ladder.deltas), 'packing': params.to_dict(),
                'family_size': len(family), 'restricted_size': len(restricted)},
        seed=params.seed, delta_b=delta_b, c0_scan=scan,
    )
