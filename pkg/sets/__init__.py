"""
Package sets: campionatori esatti degli insiemi usati negli esperimenti
e verifica della proprietà di Kakeya.
"""

from .abstract_sampler import Bounds, SetSampler
from .primitive_sampler import PrimitiveKind, PrimitiveSampler, primitive_sampler
from .union_sampler import UnionSampler, union_sampler
from .ifs_sampler import SimilarityMap, IfsSpec, IfsSampler, IFS_PRESETS, ifs_sampler
from .derived_samplers import FinitePointSampler, ProjectedSampler, DilatedSampler, SlabSampler
from .kakeya_builder import Placement, KakeyaReport, kakeya_union_builder, verify_kakeya

__all__ = [
    'Bounds', 'SetSampler',
    'PrimitiveKind', 'PrimitiveSampler', 'primitive_sampler',
    'UnionSampler', 'union_sampler',
    'SimilarityMap', 'IfsSpec', 'IfsSampler', 'IFS_PRESETS', 'ifs_sampler',
    'FinitePointSampler', 'ProjectedSampler', 'DilatedSampler', 'SlabSampler',
    'Placement', 'KakeyaReport', 'kakeya_union_builder', 'verify_kakeya',
]
