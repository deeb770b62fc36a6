"""
Package experiments: proiezioni, co-area, pipeline del bound di Kakeya e suite delle identità.
"""

from .marstrand import ProjectionEstimate, marstrand_thetas, marstrand_experiment, fraction_within
from .coarea import CoareaResult, coarea_check, coarea_sweep
from .pipeline import (
    SliceEstimate, PipelineReport, pipeline_ladder, covered_length, c0_candidates, kakeya_dimension_pipeline,
)
from .identity_suite import IdentityCheck, IdentityReport, run_identity_suite

__all__ = [
    'ProjectionEstimate', 'marstrand_thetas', 'marstrand_experiment', 'fraction_within',
    'CoareaResult', 'coarea_check', 'coarea_sweep',
    'SliceEstimate', 'PipelineReport', 'pipeline_ladder', 'covered_length', 'c0_candidates',
    'kakeya_dimension_pipeline',
    'IdentityCheck', 'IdentityReport', 'run_identity_suite',
]
