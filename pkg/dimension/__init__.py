"""
Stima della dimensione tramite packing δ-separati e regressione log-log.
"""
from .estimator import PackingParams, estimate_dimension
from .fit import DimEstimate, fit_scaling_exponent
from .metric import Metric
from .packing import PackingResult, greedy_packing_count
from .scale_ladder import ScaleLadder
from .spatial_index import (
    EuclideanGridIndex, GridIndex, ShearedHeisenbergIndex,
    comparability_constant, make_index,
)

__all__ = [
    'PackingParams', 'estimate_dimension', 'DimEstimate', 'fit_scaling_exponent', 'Metric',
    'PackingResult', 'greedy_packing_count', 'ScaleLadder', 'EuclideanGridIndex', 'GridIndex',
    'ShearedHeisenbergIndex', 'comparability_constant', 'make_index',
]
