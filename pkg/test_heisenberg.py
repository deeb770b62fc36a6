"""
Test del gruppo di Heisenberg e della metrica di Korányi.

Proprietà verificate:
    - legge di gruppo: identità, inverso, associatività
    - norma e distanza: valori noti, simmetria, disuguaglianza triangolare
    - invarianza a sinistra della distanza
    - dilatazioni: automorfismo, omogeneità della norma, fattore non positivo rifiutato
    - API scalare e vettoriale coincidono
"""

import math

import numpy as np
import pytest
from pytest import approx

from heisenberg import (
    IDENTITY, HPoint, dilate, dilate_arrays, dist, dist_arrays, inv, knorm, knorm_arrays, mul, mul_arrays,
)
from utils.errors import ErrorCode, HeisKakeyaError


def _random_points(rng, n):
    return [HPoint(*row) for row in rng.uniform(-10.0, 10.0, (n, 3))]


def _close(p: HPoint, q: HPoint, tol: float = 1e-12) -> bool:
    return all(abs(a - b) <= tol * max(1.0, abs(a)) for a, b in zip(p, q))


# -- Legge di gruppo ---------------------------------------------------------

class TestGroupLaw:
    def test_product_formula(self):
        p, q = HPoint(1.0, 2.0, 3.0), HPoint(-4.0, 5.0, 0.5)
        # t = 3 + 0.5 + ½(1·5 − (−4)·2) = 10
        assert mul(p, q) == HPoint(-3.0, 7.0, 10.0)

    def test_identity_is_neutral(self, rng):
        for p in _random_points(rng, 20):
            assert mul(p, IDENTITY) == p
            assert mul(IDENTITY, p) == p

    def test_inverse(self, rng):
        for p in _random_points(rng, 20):
            assert _close(mul(p, inv(p)), IDENTITY)
            assert _close(mul(inv(p), p), IDENTITY)

    def test_associativity(self, rng):
        pts = _random_points(rng, 30)
        for p, q, r in zip(pts[0::3], pts[1::3], pts[2::3]):
            assert _close(mul(mul(p, q), r), mul(p, mul(q, r)))

    def test_not_commutative(self):
        p, q = HPoint(1.0, 0.0, 0.0), HPoint(0.0, 1.0, 0.0)
        assert mul(p, q).t == approx(0.5)
        assert mul(q, p).t == approx(-0.5)

    def test_non_finite_coordinates_rejected(self):
        with pytest.raises(HeisKakeyaError) as info:
            HPoint(math.nan, 0.0, 0.0)
        assert info.value.code is ErrorCode.INVALID_PARAMETER


# -- Norma e distanza --------------------------------------------------------

class TestMetric:
    def test_known_norms(self):
        assert knorm(HPoint(1.0, 0.0, 0.0)) == approx(1.0)
        assert knorm(HPoint(0.0, 0.0, 0.25)) == approx(1.0)
        assert knorm(HPoint(3.0, 4.0, 0.0)) == approx(5.0)
        assert knorm(IDENTITY) == 0.0

    def test_vertical_distance_is_square_root(self):
        # d((0,0,t1), (0,0,t2)) = 2·√|t1 − t2|
        assert dist(HPoint(0.0, 0.0, 1.0), HPoint(0.0, 0.0, 0.0)) == approx(2.0)
        assert dist(HPoint(0.0, 0.0, 0.01), IDENTITY) == approx(0.2)

    def test_symmetry_and_zero(self, rng):
        pts = _random_points(rng, 20)
        for p, q in zip(pts[::2], pts[1::2]):
            assert dist(p, q) == approx(dist(q, p), rel=1e-12)
            assert dist(p, p) == 0.0

    def test_triangle_inequality(self, rng):
        pts = _random_points(rng, 300)
        for p, q, r in zip(pts[0::3], pts[1::3], pts[2::3]):
            assert dist(p, r) <= dist(p, q) + dist(q, r) + 1e-12

    def test_left_invariance(self, rng):
        pts = _random_points(rng, 30)
        for g, p, q in zip(pts[0::3], pts[1::3], pts[2::3]):
            assert dist(mul(g, p), mul(g, q)) == approx(dist(p, q), rel=1e-10)

    def test_distance_is_norm_of_quotient(self, rng):
        pts = _random_points(rng, 10)
        for p, q in zip(pts[::2], pts[1::2]):
            assert dist(p, q) == approx(knorm(mul(inv(q), p)), rel=1e-12)


# -- Dilatazioni -------------------------------------------------------------

class TestDilation:
    def test_formula(self):
        assert dilate(2.0, HPoint(1.0, -1.0, 3.0)) == HPoint(2.0, -2.0, 12.0)

    def test_norm_homogeneity(self, rng):
        for p, r in zip(_random_points(rng, 20), rng.uniform(0.1, 10.0, 20)):
            assert knorm(dilate(float(r), p)) == approx(r * knorm(p), rel=1e-12)

    def test_automorphism(self, rng):
        pts = _random_points(rng, 20)
        for p, q in zip(pts[::2], pts[1::2]):
            assert _close(dilate(3.0, mul(p, q)), mul(dilate(3.0, p), dilate(3.0, q)), 1e-12)

    @pytest.mark.parametrize("r", [0.0, -1.0])
    def test_non_positive_factor_rejected(self, r):
        with pytest.raises(HeisKakeyaError) as info:
            dilate(r, HPoint(1.0, 1.0, 1.0))
        assert info.value.code is ErrorCode.INVALID_PARAMETER
        assert info.value.operation == 'hgroup.dilate'
        with pytest.raises(HeisKakeyaError):
            dilate_arrays(r, np.zeros((2, 3)))


# -- API vettoriale ----------------------------------------------------------

class TestArrayApi:
    def test_matches_scalar_api(self, rng):
        p = rng.uniform(-10.0, 10.0, (50, 3))
        q = rng.uniform(-10.0, 10.0, (50, 3))
        products = mul_arrays(p, q)
        distances = dist_arrays(p, q)
        norms = knorm_arrays(p)
        for i in range(50):
            P, Q = HPoint(*p[i]), HPoint(*q[i])
            assert products[i] == approx(mul(P, Q).as_array(), rel=1e-12, abs=1e-12)
            assert distances[i] == approx(dist(P, Q), rel=1e-12)
            assert norms[i] == approx(knorm(P), rel=1e-12)

    def test_broadcasting_against_single_point(self, rng):
        p = rng.uniform(-1.0, 1.0, (10, 3))
        origin = np.zeros(3)
        assert dist_arrays(p, origin) == approx(knorm_arrays(p))

    def test_dilation_does_not_modify_input(self):
        p = np.array([[1.0, 2.0, 3.0]])
        out = dilate_arrays(2.0, p)
        assert out[0] == approx([2.0, 4.0, 12.0])
        assert p[0] == approx([1.0, 2.0, 3.0])
