"""
Test della dualità: restrizione e proiezione delle famiglie, catena
fetta → traslazione → altezze, coni e identità di proiezione.
"""

import math

import numpy as np
import pytest
from pytest import approx

from duality import (
    ProjectionAxes, cone_c1_residual, cone_c2_residual, dual_direction, dual_height, gamma_theta, meets_plane,
    phi_heights, project_family, restrict_family, rotation_R, scalar_proj, slice_points, theta_of_c,
    translate_to_yot, unit_dual_direction, verify_projection_identity,
)
from heisenberg import Chart, CodeFamily, SegmentCode, line_points
from utils.errors import ErrorCode, HeisKakeyaError


def _x_code(a=0.0, b=0.0, d=0.0, eps=0.0):
    return SegmentCode(a, b, d, eps)


# -- Spazio delle rette ------------------------------------------------------

class TestLineSpace:
    @pytest.mark.parametrize("c,inside", [(0.0, False), (0.5, True), (0.999, True), (1.0, False), (-0.1, False)])
    def test_meets_plane_open_interval(self, c, inside):
        assert meets_plane(_x_code(), c) is inside

    def test_meets_plane_rejects_y_chart(self):
        with pytest.raises(HeisKakeyaError) as info:
            meets_plane(SegmentCode(0.0, 0.0, 0.0, 0.0, Chart.Y_PARAM), 0.5)
        assert info.value.code is ErrorCode.INVALID_CODE
        assert info.value.operation == 'duality.meets_plane'

    def test_restrict_family(self):
        keep = _x_code(b=1.0, eps=0.0)
        steep = _x_code(b=2.0, eps=0.0)
        away = _x_code(b=0.0, eps=2.0)
        y_chart = SegmentCode(0.0, 0.0, 0.0, 0.0, Chart.Y_PARAM)
        restricted = restrict_family(CodeFamily([keep, steep, away, y_chart], label="E"), 0.3)
        assert restricted.codes == [keep]
        assert restricted.label == "E|x=0.3"

    def test_restrict_to_empty(self, origin_family):
        assert len(restrict_family(origin_family, 5.0)) == 0

    def test_project_slopes_without_duplicates(self):
        family = CodeFamily([_x_code(a=0.0, b=0.5), _x_code(a=1.0, b=0.5), _x_code(a=0.0, b=-0.2)])
        assert project_family(family, ProjectionAxes.P2).tolist() == [0.5, -0.2]

    def test_project_codes(self):
        family = CodeFamily([_x_code(a=1.0, b=0.5, d=2.0, eps=0.0), _x_code(a=1.0, b=0.5, d=2.0, eps=0.1)])
        points = project_family(family, ProjectionAxes.P123)
        assert points.shape == (1, 3)
        assert points[0].tolist() == [1.0, 0.5, 2.0]

    def test_project_empty_family(self):
        assert project_family(CodeFamily([]), ProjectionAxes.P123).shape == (0, 3)

    def test_project_rejects_y_chart(self, origin_family):
        with pytest.raises(HeisKakeyaError) as info:
            project_family(origin_family, ProjectionAxes.P2)
        assert info.value.code is ErrorCode.INVALID_CODE


# -- Fette e altezze ---------------------------------------------------------

class TestSliceChain:
    def test_slice_points_lie_on_segments(self, rng):
        B = rng.uniform(-3.0, 3.0, (20, 3))
        c = 0.7
        points = slice_points(B, c)
        for (a, b, d), p in zip(B, points):
            assert p == approx(line_points(SegmentCode(a, b, d, 0.0), np.array([c]))[0])

    def test_translation_lands_on_yot_plane(self, rng):
        B = rng.uniform(-3.0, 3.0, (20, 3))
        moved = translate_to_yot(slice_points(B, 1.5), 1.5)
        assert np.all(moved[:, 0] == 0.0)

    def test_heights_match_dual_direction(self, rng):
        B = rng.uniform(-10.0, 10.0, (500, 3))
        for c in (-2.0, 0.0, 0.4, 3.0):
            heights = phi_heights(translate_to_yot(slice_points(B, c), c))
            assert heights == approx(dual_height(B, c), rel=1e-12, abs=1e-12)

    def test_dual_height_formula(self):
        assert dual_height(np.array([1.0, 2.0, 3.0]), 2.0) == approx(-2.0 - 4.0 + 3.0)

    def test_translate_rejects_points_off_plane(self):
        with pytest.raises(HeisKakeyaError) as info:
            translate_to_yot(np.array([[0.5, 0.0, 0.0]]), 0.4)
        assert info.value.code is ErrorCode.NOT_ON_PLANE

    def test_phi_rejects_points_off_plane(self):
        with pytest.raises(HeisKakeyaError) as info:
            phi_heights(np.array([[1e-6, 0.0, 0.0]]))
        assert info.value.code is ErrorCode.NOT_ON_PLANE


# -- Direzioni, coni, rotazione ----------------------------------------------

class TestConeGeometry:
    def test_dual_direction_norm(self, rng):
        c = rng.uniform(-10.0, 10.0, 100)
        assert np.linalg.norm(dual_direction(c), axis=1) == approx(1.0 + c * c / 2.0, rel=1e-12)
        assert np.linalg.norm(unit_dual_direction(c), axis=1) == approx(1.0, abs=1e-12)

    def test_unit_dual_direction_lies_on_c1(self, rng):
        c = rng.uniform(-10.0, 10.0, 100)
        assert np.max(np.abs(cone_c1_residual(unit_dual_direction(c)))) <= 1e-12

    def test_rotation_maps_c1_to_c2(self, rng):
        y = rng.uniform(-5.0, 5.0, 200)
        z = -np.sign(y) * rng.uniform(0.0, 5.0, 200)
        cone = np.stack([np.sqrt(-2.0 * y * z), y, z], axis=1)
        assert np.max(np.abs(cone_c1_residual(cone))) <= 1e-12
        assert np.max(np.abs(cone_c2_residual(rotation_R(cone)))) <= 1e-11

    def test_rotation_is_isometry(self, rng):
        w, v = rng.uniform(-10.0, 10.0, (2, 50, 3))
        assert np.sum(rotation_R(w) * rotation_R(v), axis=1) == approx(np.sum(w * v, axis=1), rel=1e-12, abs=1e-12)

    def test_theta_of_zero(self):
        theta = theta_of_c(0.0)
        assert isinstance(theta, float)
        assert theta == approx(math.pi / 2)

    def test_theta_range(self, rng):
        theta = theta_of_c(rng.uniform(-50.0, 50.0, 1000))
        assert np.all((theta >= 0.0) & (theta < 2.0 * math.pi))

    def test_rotation_of_unit_dual_is_gamma(self, rng):
        c = rng.uniform(-10.0, 10.0, 200)
        assert rotation_R(unit_dual_direction(c)) == approx(gamma_theta(theta_of_c(c)), abs=1e-12)

    def test_gamma_is_unit(self):
        assert np.linalg.norm(gamma_theta(np.linspace(0, 2 * math.pi, 9)), axis=1) == approx(1.0)

    def test_scalar_proj_needs_unit_direction(self):
        assert scalar_proj(np.array([0.0, 0.0, 1.0]), np.array([1.0, 2.0, 3.0])) == approx(3.0)
        with pytest.raises(HeisKakeyaError) as info:
            scalar_proj(np.array([0.0, 0.0, 2.0]), np.array([1.0, 2.0, 3.0]))
        assert info.value.code is ErrorCode.INVALID_PARAMETER


class TestProjectionIdentity:
    def test_scalar_input_returns_float(self):
        residual = verify_projection_identity(0.3, np.array([1.0, -2.0, 0.5]))
        assert isinstance(residual, float)
        assert residual <= 1e-12

    def test_random_inputs(self, rng):
        c = rng.uniform(-10.0, 10.0, 10_000)
        w = rng.uniform(-10.0, 10.0, (10_000, 3))
        residual = verify_projection_identity(c, w)
        assert residual.shape == (10_000,)
        assert np.max(residual) <= 1e-12 * 20
