"""
Package duality: codifica delle rette come punti di R³ e geometria delle proiezioni.
"""

from .line_space import ProjectionAxes, meets_plane, restrict_family, project_family
from .cone_geometry import (
    slice_points, translate_to_yot, phi_heights, dual_direction, unit_dual_direction, dual_height,
    scalar_proj, gamma_theta, theta_of_c, rotation_R, cone_c1_residual, cone_c2_residual,
    verify_projection_identity,
)

__all__ = [
    'ProjectionAxes', 'meets_plane', 'restrict_family', 'project_family',
    'slice_points', 'translate_to_yot', 'phi_heights', 'dual_direction', 'unit_dual_direction', 'dual_height',
    'scalar_proj', 'gamma_theta', 'theta_of_c', 'rotation_R', 'cone_c1_residual', 'cone_c2_residual',
    'verify_projection_identity',
]
