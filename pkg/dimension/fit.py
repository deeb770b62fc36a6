"""
Regressione log-log dei numeri di packing.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from dimension.metric import Metric
from utils.errors import ErrorCode, HeisKakeyaError

MIN_SCALES = 4


@dataclass
class DimEstimate:
    """Scale, conteggi di packing e retta log₂ count = slope·log₂(1/δ) + intercept."""

    deltas: List[float]
    counts: List[int]
    slope: float
    intercept: float
    r2: float
    metric: Metric = Metric.EUCLIDEAN
    label: str = ""
    seed: Optional[int] = None

    def summary(self) -> dict:
        """Riepilogo JSON: slope, intercept, r2, metric, label, seed."""
        return {
            'slope': self.slope,
            'intercept': self.intercept,
            'r2': self.r2,
            'metric': self.metric.value,
            'label': self.label,
            'seed': self.seed,
        }

    def to_dict(self) -> dict:
        data = self.summary()
        data['deltas'] = list(self.deltas)
        data['counts'] = list(self.counts)
        return data

    def csv_rows(self) -> List[dict]:
        """Righe con colonne delta, count, log2_inv_delta, log2_count."""
        return [{
            'delta': d,
            'count': c,
            'log2_inv_delta': float(-np.log2(d)),
            'log2_count': float(np.log2(c)),
        } for d, c in zip(self.deltas, self.counts)]


def fit_scaling_exponent(deltas: Sequence[float], counts: Sequence[int], metric: Metric = Metric.EUCLIDEAN,
                         label: str = "", seed: Optional[int] = None) -> DimEstimate:
    """
    Minimi quadrati di log₂ count contro log₂(1/δ).

    Raises:
        HeisKakeyaError: meno di 4 scale, lunghezze diverse, conteggi nulli
    """
    deltas = [float(d) for d in deltas]
    counts = [int(c) for c in counts]
    if len(deltas) != len(counts):
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'dimest.fit_scaling_exponent',
                              f"{len(deltas)} deltas but {len(counts)} counts")
    if len(deltas) < MIN_SCALES:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'dimest.fit_scaling_exponent',
                              f"Need at least {MIN_SCALES} scales, got {len(deltas)}")
    if any(c <= 0 for c in counts):
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'dimest.fit_scaling_exponent',
                              f"Counts must be positive: {counts}")
    if any(not d > 0 for d in deltas):
        raise HeisKakeyaError(ErrorCode.INVALID_SCALE, 'dimest.fit_scaling_exponent', f"Deltas must be > 0: {deltas}")

    x = -np.log2(np.array(deltas))
    y = np.log2(np.array(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)

    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    # Conteggi costanti: retta esatta
    r2 = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))

    return DimEstimate(deltas, counts, float(slope), float(intercept), r2, metric, label, seed)
