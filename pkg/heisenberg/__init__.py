"""
Package heisenberg: gruppo di Heisenberg, metrica di Korányi, rette orizzontali.
"""

from .group import (
    HPoint, IDENTITY, mul, inv, knorm, dist, dilate,
    mul_arrays, inv_arrays, knorm_arrays, dist_arrays, dilate_arrays,
)
from .lines import (
    Chart, SlabSide, SegmentCode, CodeFamily,
    line_point, line_points, code_from_translation, translate_unit_direction,
    segment_endpoints, x_projection_interval, direction_angle,
    horizontality_residuals, is_horizontal, slab_crossing,
)

__all__ = [
    'HPoint', 'IDENTITY', 'mul', 'inv', 'knorm', 'dist', 'dilate',
    'mul_arrays', 'inv_arrays', 'knorm_arrays', 'dist_arrays', 'dilate_arrays',
    'Chart', 'SlabSide', 'SegmentCode', 'CodeFamily',
    'line_point', 'line_points', 'code_from_translation', 'translate_unit_direction',
    'segment_endpoints', 'x_projection_interval', 'direction_angle',
    'horizontality_residuals', 'is_horizontal', 'slab_crossing',
]
