"""
Test della stima di dimensione: scale, indici spaziali, packing greedy, fit log-log.

Le calibrazioni a piena scala sono marcate slow.
"""

import math

import numpy as np
import pytest
from pytest import approx

from dimension import (
    EuclideanGridIndex, Metric, PackingParams, ScaleLadder, ShearedHeisenbergIndex, comparability_constant,
    estimate_dimension, fit_scaling_exponent, greedy_packing_count, make_index,
)
from experiments import pipeline_ladder
from heisenberg import dist_arrays
from sets import (
    IFS_PRESETS, Bounds, DilatedSampler, FinitePointSampler, PrimitiveKind, ifs_sampler, primitive_sampler,
)
from utils.errors import ErrorCode, HeisKakeyaError


def _min_pairwise(points: np.ndarray, metric: Metric) -> float:
    best = math.inf
    for i in range(len(points) - 1):
        best = min(best, float(np.min(metric.distances(points[i + 1:], points[i]))))
    return best


# -- Scale -------------------------------------------------------------------

class TestScaleLadder:
    def test_default_ladder(self):
        ladder = ScaleLadder.default()
        assert len(ladder) == 6
        assert ladder.deltas[0] == approx(0.3)
        assert ladder.deltas[-1] == approx(0.3 * 2 ** -2.5)
        ratios = np.array(ladder.deltas[:-1]) / np.array(ladder.deltas[1:])
        assert ratios == approx(math.sqrt(2.0))

    @pytest.mark.parametrize("deltas", [
        (0.1, 0.2, 0.3, 0.4),
        (0.3, 0.1, 0.05),
        (0.3, 0.29),
        (0.3, 0.0),
        (),
    ])
    def test_invalid_ladders(self, deltas):
        with pytest.raises(HeisKakeyaError) as info:
            ScaleLadder(deltas)
        assert info.value.code is ErrorCode.INVALID_LADDER

    def test_geometric_needs_decreasing_range(self):
        with pytest.raises(HeisKakeyaError):
            ScaleLadder.geometric(0.1, 0.2, 4)
        with pytest.raises(HeisKakeyaError):
            ScaleLadder.geometric(0.3, 0.1, 1)


# -- Indici spaziali ---------------------------------------------------------

class TestSpatialIndex:
    def _brute_force(self, stored, queries, delta, metric):
        return np.array([bool(np.any(metric.distances(stored, q) < delta)) for q in queries])

    def test_sheared_index_matches_brute_force(self, rng):
        delta = 0.3
        stored = rng.uniform(-2.0, 2.0, (300, 3))
        queries = rng.uniform(-2.0, 2.0, (600, 3))
        index = ShearedHeisenbergIndex(delta)
        index.add(stored)
        assert len(index) == 300
        assert np.array_equal(index.blocked(queries), self._brute_force(stored, queries, delta, Metric.HEISENBERG))

    def test_sheared_index_far_from_origin(self, rng):
        # Colonne lontane dall'origine: la traslazione della t conta
        delta = 0.1
        stored = rng.uniform(-1.0, 1.0, (300, 3)) * [1.0, 1.0, 0.05] + [7.0, -6.0, 0.0]
        queries = rng.uniform(-1.0, 1.0, (600, 3)) * [1.0, 1.0, 0.05] + [7.0, -6.0, 0.0]
        index = ShearedHeisenbergIndex(delta)
        index.add(stored)
        assert np.array_equal(index.blocked(queries), self._brute_force(stored, queries, delta, Metric.HEISENBERG))

    def test_euclidean_index_with_comparability(self, rng):
        delta = 0.3
        bounds = Bounds((-1.0, -1.0, -1.0), (1.0, 1.0, 1.0))
        index = make_index(Metric.HEISENBERG, delta, bounds, 'euclidean')
        assert isinstance(index, EuclideanGridIndex)
        assert index.comparability >= math.sqrt(1.0 + (delta / 4 + math.sqrt(2.0) / 2) ** 2)
        stored = rng.uniform(-1.0, 1.0, (300, 3))
        queries = rng.uniform(-1.0, 1.0, (600, 3))
        index.add(stored)
        assert np.array_equal(index.blocked(queries), self._brute_force(stored, queries, delta, Metric.HEISENBERG))

    def test_comparability_bounds_euclidean_by_heisenberg(self, rng):
        bounds = Bounds((0.0, 0.0, 0.0), (1.0, 1.0, 1.0))
        constant = comparability_constant(bounds, 0.2)
        p = rng.uniform(0.0, 1.0, (20_000, 3))
        q = rng.uniform(0.0, 1.0, (20_000, 3))
        dh = dist_arrays(p, q)
        close = (dh < 0.2) & (dh > 0)
        assert np.all(np.linalg.norm(p - q, axis=1)[close] <= constant * dh[close])

    def test_euclidean_metric_always_unit_cells(self):
        index = make_index(Metric.EUCLIDEAN, 0.1, Bounds((0, 0, 0), (1, 1, 1)), 'euclidean')
        assert index.comparability == 1.0

    def test_unknown_index_kind(self):
        with pytest.raises(HeisKakeyaError) as info:
            make_index(Metric.HEISENBERG, 0.1, Bounds((0, 0, 0), (1, 1, 1)), 'kdtree')
        assert info.value.code is ErrorCode.INVALID_PARAMETER

    def test_overflow_at_tiny_scale(self):
        index = ShearedHeisenbergIndex(1e-7)
        with pytest.raises(HeisKakeyaError) as info:
            index.add(np.array([[1.0, 0.0, 0.0]]))
        assert info.value.code is ErrorCode.INDEX_OVERFLOW

    def test_empty_index_blocks_nothing(self):
        index = ShearedHeisenbergIndex(0.1)
        assert not index.blocked(np.zeros((3, 3))).any()


# -- Packing greedy ----------------------------------------------------------

class TestGreedyPacking:
    @pytest.mark.parametrize("metric", list(Metric))
    def test_packing_is_separated(self, metric):
        cube = primitive_sampler(PrimitiveKind.CUBE, 1.0, rng_seed=0)
        result = greedy_packing_count(cube, 0.3, metric, stop_k=300, rng_seed=1)
        assert result.count == len(result.points) > 1
        assert _min_pairwise(result.points, metric) >= 0.3

    def test_deterministic_given_seed(self):
        cube = primitive_sampler(PrimitiveKind.CUBE, 1.0)
        first = greedy_packing_count(cube, 0.25, Metric.HEISENBERG, stop_k=200, rng_seed=7)
        second = greedy_packing_count(cube, 0.25, Metric.HEISENBERG, stop_k=200, rng_seed=7)
        assert first.count == second.count
        assert np.array_equal(first.points, second.points)

    def test_batch_size_does_not_change_result(self):
        segment = primitive_sampler(PrimitiveKind.X_AXIS_SEGMENT, 1.0)
        # Blocchi da 1 e da 64 estraggono lo stesso flusso di candidati
        serial = greedy_packing_count(segment, 0.05, Metric.EUCLIDEAN, stop_k=100, rng_seed=3, batch_size=1)
        batched = greedy_packing_count(segment, 0.05, Metric.EUCLIDEAN, stop_k=100, rng_seed=3, batch_size=64)
        assert serial.count == batched.count
        assert np.array_equal(serial.points, batched.points)

    def test_single_point_set(self):
        point = FinitePointSampler(np.array([[0.2, 0.3, 0.4]]))
        assert greedy_packing_count(point, 0.01, Metric.HEISENBERG, stop_k=50, rng_seed=0).count == 1

    def test_distance_exactly_delta_is_accepted(self):
        pair = FinitePointSampler.on_line([0.0, 0.5])
        assert greedy_packing_count(pair, 0.5, Metric.EUCLIDEAN, stop_k=50, rng_seed=0).count == 2
        assert greedy_packing_count(pair, 0.5000001, Metric.EUCLIDEAN, stop_k=50, rng_seed=0).count == 1

    def test_seed_points_are_kept(self):
        cube = primitive_sampler(PrimitiveKind.CUBE, 1.0)
        coarse = greedy_packing_count(cube, 0.4, Metric.HEISENBERG, stop_k=200, rng_seed=0)
        fine = greedy_packing_count(cube, 0.3, Metric.HEISENBERG, stop_k=200, rng_seed=1, seed_points=coarse.points)
        assert fine.count >= coarse.count
        assert np.array_equal(fine.points[:coarse.count], coarse.points)

    def test_t_axis_count_near_four_over_delta_squared(self):
        # d((0,0,u), (0,0,v)) = 2·|u − v|^(1/2)
        t_axis = primitive_sampler(PrimitiveKind.T_AXIS, 1.0)
        count = greedy_packing_count(t_axis, 0.2, Metric.HEISENBERG, stop_k=1000, rng_seed=0).count
        assert 50 <= count <= 200

    def test_dilation_rescales_counts(self):
        cube = primitive_sampler(PrimitiveKind.CUBE, 1.0)
        base = greedy_packing_count(cube, 0.3, Metric.HEISENBERG, stop_k=500, rng_seed=0).count
        scaled = greedy_packing_count(DilatedSampler(cube, 2.0), 0.6, Metric.HEISENBERG, stop_k=500, rng_seed=0).count
        assert scaled == approx(base, rel=0.25)

    def test_invalid_arguments(self):
        cube = primitive_sampler(PrimitiveKind.CUBE, 1.0)
        with pytest.raises(HeisKakeyaError) as info:
            greedy_packing_count(cube, 0.0, Metric.EUCLIDEAN, stop_k=10)
        assert info.value.code is ErrorCode.INVALID_SCALE
        with pytest.raises(HeisKakeyaError) as info:
            greedy_packing_count(cube, 0.1, Metric.EUCLIDEAN, stop_k=0)
        assert info.value.code is ErrorCode.INVALID_PARAMETER


# -- Fit ---------------------------------------------------------------------

class TestFit:
    def test_exact_power_law(self):
        deltas = [2.0 ** -k for k in range(1, 6)]
        counts = [4 ** k for k in range(1, 6)]
        estimate = fit_scaling_exponent(deltas, counts)
        assert estimate.slope == approx(2.0)
        assert estimate.intercept == approx(0.0, abs=1e-9)
        assert estimate.r2 == approx(1.0)

    def test_constant_counts(self):
        estimate = fit_scaling_exponent([0.4, 0.2, 0.1, 0.05], [5, 5, 5, 5])
        assert estimate.slope == approx(0.0, abs=1e-12)
        assert estimate.r2 == 1.0

    def test_r2_in_unit_interval(self):
        estimate = fit_scaling_exponent([0.4, 0.2, 0.1, 0.05], [3, 40, 5, 60])
        assert 0.0 <= estimate.r2 <= 1.0

    @pytest.mark.parametrize("deltas,counts,code", [
        ([0.4, 0.2, 0.1], [1, 2, 4], ErrorCode.INVALID_PARAMETER),
        ([0.4, 0.2, 0.1, 0.05], [1, 2, 4], ErrorCode.INVALID_PARAMETER),
        ([0.4, 0.2, 0.1, 0.05], [1, 0, 4, 8], ErrorCode.INVALID_PARAMETER),
        ([0.4, 0.2, 0.1, 0.0], [1, 2, 4, 8], ErrorCode.INVALID_SCALE),
    ])
    def test_invalid_input(self, deltas, counts, code):
        with pytest.raises(HeisKakeyaError) as info:
            fit_scaling_exponent(deltas, counts)
        assert info.value.code is code

    def test_csv_rows(self):
        estimate = fit_scaling_exponent([0.5, 0.25, 0.125, 0.0625], [2, 4, 8, 16], Metric.HEISENBERG, "x", 3)
        rows = estimate.csv_rows()
        assert list(rows[0]) == ['delta', 'count', 'log2_inv_delta', 'log2_count']
        assert rows[1]['log2_inv_delta'] == approx(2.0)
        assert rows[3]['log2_count'] == approx(4.0)
        assert estimate.summary() == {'slope': approx(1.0), 'intercept': approx(0.0, abs=1e-9), 'r2': approx(1.0),
                                      'metric': 'heisenberg', 'label': 'x', 'seed': 3}


# -- Stima completa ----------------------------------------------------------

class TestEstimateDimension:
    def test_counts_non_decreasing(self, short_ladder, fast_params):
        cube = primitive_sampler(PrimitiveKind.CUBE, 1.0)
        estimate = estimate_dimension(cube, short_ladder, Metric.HEISENBERG, fast_params)
        assert estimate.counts == sorted(estimate.counts)
        assert estimate.deltas == list(short_ladder.deltas)
        assert estimate.metric is Metric.HEISENBERG
        assert estimate.seed == 0

    def test_segment_counts_on_default_ladder(self):
        # Packing di [0, 1]: 1/(2δ) < N ≤ ⌊1/δ⌋ + 1; il +1 di bordo abbassa la pendenza alle scale grosse
        segment = primitive_sampler(PrimitiveKind.X_AXIS_SEGMENT, 1.0)
        ladder = ScaleLadder.default()
        estimate = estimate_dimension(segment, ladder, Metric.EUCLIDEAN, PackingParams(seed=0))
        for delta, count in zip(ladder.deltas, estimate.counts):
            assert 1.0 / (2.0 * delta) < count <= math.floor(1.0 / delta) + 1
        assert estimate.slope == approx(1.0, abs=0.25)
        assert estimate.r2 >= 0.9

    def test_t_axis_is_two_dimensional_in_heisenberg_metric(self, short_ladder, fast_params):
        t_axis = primitive_sampler(PrimitiveKind.T_AXIS, 1.0)
        estimate = estimate_dimension(t_axis, short_ladder, Metric.HEISENBERG, fast_params)
        assert estimate.slope == approx(2.0, abs=0.2)

    def test_reproducible(self, short_ladder):
        params = PackingParams(stop_k=200, seed=11)
        disc = primitive_sampler(PrimitiveKind.PLANE_DISC, 1.0)
        first = estimate_dimension(disc, short_ladder, Metric.HEISENBERG, params)
        second = estimate_dimension(disc, short_ladder, Metric.HEISENBERG, params)
        assert first.counts == second.counts

    @pytest.mark.slow
    @pytest.mark.parametrize("kind,metric,expected,tolerance", [
        (PrimitiveKind.T_AXIS, Metric.HEISENBERG, 2.0, 0.2),
        (PrimitiveKind.PLANE_DISC, Metric.EUCLIDEAN, 2.0, 0.15),
        (PrimitiveKind.PLANE_DISC, Metric.HEISENBERG, 3.0, 0.3),
        (PrimitiveKind.CUBE, Metric.HEISENBERG, 4.0, 0.3),
    ])
    def test_calibration_on_default_ladder(self, kind, metric, expected, tolerance):
        sampler = primitive_sampler(kind, 1.0)
        estimate = estimate_dimension(sampler, ScaleLadder.default(), metric, PackingParams(seed=0))
        assert estimate.slope == approx(expected, abs=tolerance)
        assert estimate.r2 >= 0.98

    @pytest.mark.slow
    def test_ifs_depth_does_not_change_dimension(self):
        spec = IFS_PRESETS['CANTOR2']
        slopes = [estimate_dimension(ifs_sampler(spec.with_depth(depth), rng_seed=0), pipeline_ladder(),
                                     Metric.EUCLIDEAN, PackingParams(seed=0)).slope
                  for depth in (40, 60)]
        assert slopes[0] == approx(slopes[1], abs=0.15)

