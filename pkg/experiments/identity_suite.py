"""
Suite vettoriale delle identità algebriche: legge di gruppo, metrica,
dilatazioni, segmenti orizzontali unitari, catena delle fette e identità
di proiezione. Ogni controllo riporta il residuo massimo su input casuali
con coordinate limitate da 10.

I residui sono assoluti, tranne l'omogeneità della norma che è relativa
a r·‖p‖.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np

from config import DUALITY_SAMPLES, HORIZONTALITY_TOLERANCE, IDENTITY_TOLERANCE
from duality.cone_geometry import (
    cone_c1_residual, cone_c2_residual, dual_direction, dual_height, gamma_theta, phi_heights,
    rotation_R, slice_points, theta_of_c, translate_to_yot, unit_dual_direction, verify_projection_identity,
)
from duality.line_space import meets_plane
from heisenberg.group import HPoint, dilate_arrays, dist_arrays, inv_arrays, knorm_arrays, mul_arrays
from heisenberg.lines import (
    SQRT3, Chart, SegmentCode, SlabSide, code_from_translation, horizontality_residuals,
    line_points, slab_crossing, translate_unit_direction, x_projection_interval, line_point,
)
from logger.logger import get_logger

logger = get_logger('duality')

BOUND = 10.0
LINE_SAMPLES = 10_000
SLAB_GRID = 200


@dataclass
class IdentityCheck:
    name: str
    samples: int
    max_residual: float
    tolerance: float = IDENTITY_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def csv_row(self) -> dict:
        return {'check': self.name, 'samples': self.samples, 'max_residual': self.max_residual,
                'tolerance': self.tolerance, 'passed': self.passed}


@dataclass
class IdentityReport:
    checks: List[IdentityCheck] = field(default_factory=list)
    seed: int = 0

    @property
    def max_residual(self) -> float:
        """Residuo massimo sui controlli con tolleranza IDENTITY_TOLERANCE."""
        strict = [c.max_residual for c in self.checks if c.tolerance == IDENTITY_TOLERANCE]
        return max(strict) if strict else 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            'seed': self.seed,
            'tolerance': IDENTITY_TOLERANCE,
            'max_residual': self.max_residual,
            'passed': self.passed,
            'failed': self.failed,
            'checks': [c.csv_row() for c in self.checks],
        }

    def csv_rows(self) -> List[dict]:
        return [c.csv_row() for c in self.checks]


def _absolute(diff: np.ndarray) -> float:
    diff = np.abs(np.asarray(diff, dtype=float))
    return float(np.max(diff)) if diff.size else 0.0


def _points(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(-BOUND, BOUND, (n, 3))


# ============================================================
# GRUPPO E METRICA
# ============================================================

def _group_checks(rng: np.random.Generator, n: int) -> List[IdentityCheck]:
    p, q, r, g = _points(rng, n), _points(rng, n), _points(rng, n), _points(rng, n)
    checks = []

    left = mul_arrays(mul_arrays(p, q), r)
    right = mul_arrays(p, mul_arrays(q, r))
    checks.append(IdentityCheck('associativity', n, _absolute(left - right)))
    checks.append(IdentityCheck('inverse', n, _absolute(mul_arrays(inv_arrays(p), p))))

    d_pq, d_qp = dist_arrays(p, q), dist_arrays(q, p)
    d_pr, d_qr = dist_arrays(p, r), dist_arrays(q, r)
    checks.append(IdentityCheck('metric_symmetry', n, _absolute(d_pq - d_qp)))
    checks.append(IdentityCheck('triangle_inequality', n, _absolute(np.maximum(d_pr - d_pq - d_qr, 0.0))))
    # d(p, q) = 0 sse p = q: conta anche le coppie distinte a distanza nulla
    false_zero = np.count_nonzero((d_pq == 0.0) & np.any(p != q, axis=1))
    checks.append(IdentityCheck('metric_identity', n, float(np.max(dist_arrays(p, p))) + false_zero))
    moved = dist_arrays(mul_arrays(g, p), mul_arrays(g, q))
    checks.append(IdentityCheck('left_invariance', n, _absolute(moved - d_pq)))

    norm = knorm_arrays(p)
    homogeneity = 0.0
    for factor in rng.uniform(0.1, BOUND, 16):
        dilated = knorm_arrays(dilate_arrays(float(factor), p))
        homogeneity = max(homogeneity, float(np.max(np.abs(dilated - factor * norm) / (factor * norm))))
    checks.append(IdentityCheck('dilation_homogeneity', n, homogeneity))

    # Fattore comune per batch (dilate_arrays ha r scalare); r <= 1 tiene le coordinate dilatate entro BOUND
    r_common = float(rng.uniform(0.1, 1.0))
    lhs = dilate_arrays(r_common, mul_arrays(p, q))
    rhs = mul_arrays(dilate_arrays(r_common, p), dilate_arrays(r_common, q))
    checks.append(IdentityCheck('dilation_automorphism', n, _absolute(lhs - rhs)))
    return checks


# ============================================================
# SEGMENTI ORIZZONTALI
# ============================================================

def _random_codes(rng: np.random.Generator, n: int) -> List[Tuple[HPoint, SegmentCode]]:
    out = []
    for q, b, y_chart in zip(_points(rng, n), rng.uniform(-BOUND, BOUND, n), rng.random(n) < 0.5):
        point = HPoint(*q)
        out.append((point, code_from_translation(point, float(b), Chart.Y_PARAM if y_chart else Chart.X_PARAM)))
    return out


def _line_checks(rng: np.random.Generator, n: int) -> List[IdentityCheck]:
    pairs = _random_codes(rng, n)
    codes = [code for _, code in pairs]
    checks = []

    lo = np.array([[*line_point(c, c.interval[0])] for c in codes])
    hi = np.array([[*line_point(c, c.interval[1])] for c in codes])
    checks.append(IdentityCheck('segment_unit_length', n, float(np.max(np.abs(dist_arrays(lo, hi) - 1.0)))))

    x_codes = [c for c in codes if c.chart is Chart.X_PARAM]
    b = np.array([c.b for c in x_codes])
    lengths = np.array([np.subtract(*x_projection_interval(c)[::-1]) for c in x_codes])
    exact = np.array([c.interval_length for c in x_codes])
    checks.append(IdentityCheck('interval_length', len(x_codes), float(np.max(np.abs(lengths - 1.0 / np.sqrt(b * b + 1.0))))))
    mismatch = np.count_nonzero((exact > 0.5) != (b * b < 3.0))
    checks.append(IdentityCheck('interval_longer_than_half', len(x_codes), float(mismatch)))

    s = rng.uniform(-BOUND, BOUND, n)
    coded = np.array([[*line_point(c, si)] for c, si in zip(codes, s)])
    direct = np.array([[*translate_unit_direction(q, c, si)] for (q, c), si in zip(pairs, s)])
    checks.append(IdentityCheck('translation_consistency', n, _absolute(coded - direct)))

    steps = np.arange(-5, 6) * 1e-3
    worst = max(float(np.max(horizontality_residuals(
        [(float(si), HPoint(*pt)) for si, pt in zip(steps + c.eps, line_points(c, steps + c.eps))])))
        for c in codes[:100])
    checks.append(IdentityCheck('horizontality', min(n, 100), worst, HORIZONTALITY_TOLERANCE))
    return checks


def _slab_checks() -> List[IdentityCheck]:
    c0 = 0.3
    misses = 0
    slopes = np.linspace(-SQRT3, SQRT3, SLAB_GRID + 2)[1:-1]
    fractions = np.linspace(0.0, 1.0, SLAB_GRID + 2)[1:-1]
    for b in slopes:
        length = 1.0 / np.sqrt(b * b + 1.0)
        for f in fractions:
            code = SegmentCode(0.0, float(b), 0.0, float(c0 - f * length))
            if slab_crossing(code, c0) is SlabSide.NONE:
                misses += 1
    return [IdentityCheck('slab_crossing_never_none', SLAB_GRID * SLAB_GRID, float(misses))]


# ============================================================
# DUALITÀ
# ============================================================

def _duality_checks(rng: np.random.Generator, n: int) -> List[IdentityCheck]:
    c = rng.uniform(-BOUND, BOUND, n)
    w = _points(rng, n)
    checks = []

    norm = np.linalg.norm(dual_direction(c), axis=1)
    checks.append(IdentityCheck('dual_direction_norm', n, _absolute(norm - (1.0 + c * c / 2.0))))

    theta = theta_of_c(c)
    den = 2.0 + c * c
    cos_expected, sin_expected = -2.0 * np.sqrt(2.0) * c / den, (2.0 - c * c) / den
    checks.append(IdentityCheck('theta_on_unit_circle', n, float(np.max(np.abs(cos_expected ** 2 + sin_expected ** 2 - 1.0)))))
    checks.append(IdentityCheck('theta_of_c_branch', n,
                                float(np.max(np.abs(np.cos(theta) - cos_expected) + np.abs(np.sin(theta) - sin_expected)))))

    v = _points(rng, n)
    inner = np.sum(w * v, axis=1)
    checks.append(IdentityCheck('rotation_isometry', n,
                                _absolute(np.sum(rotation_R(w) * rotation_R(v), axis=1) - inner)))

    # Punti di C1: y, z di segno opposto, x = ±√(−2yz)
    y = rng.uniform(-BOUND, BOUND, n)
    z = -np.sign(y) * rng.uniform(0.0, BOUND, n)
    x = np.sqrt(-2.0 * y * z) * np.where(rng.random(n) < 0.5, -1.0, 1.0)
    cone = np.stack([x, y, z], axis=1)
    checks.append(IdentityCheck('cone_c1_sample', n, _absolute(cone_c1_residual(cone))))
    checks.append(IdentityCheck('rotation_maps_c1_to_c2', n, _absolute(cone_c2_residual(rotation_R(cone)))))

    checks.append(IdentityCheck('rotation_of_u1_is_gamma', n,
                                float(np.max(np.abs(rotation_R(unit_dual_direction(c)) - gamma_theta(theta))))))
    checks.append(IdentityCheck('projection_identity', n,
                                _absolute(verify_projection_identity(c, w))))
    return checks


def _slice_chain_checks(rng: np.random.Generator, n: int) -> List[IdentityCheck]:
    B = _points(rng, n)
    worst = 0.0
    for c in rng.uniform(-BOUND, BOUND, 16):
        heights = phi_heights(translate_to_yot(slice_points(B, c), c))
        expected = dual_height(B, c)
        worst = max(worst, _absolute(heights - expected))
    checks = [IdentityCheck('slice_translate_height_chain', 16 * n, worst)]

    mismatch = 0
    for q, code in _random_codes(rng, LINE_SAMPLES // 10):
        if code.chart is not Chart.X_PARAM:
            continue
        lo, hi = x_projection_interval(code)
        for c in (lo, hi, 0.5 * (lo + hi), q.x, lo - 1e-3):
            mismatch += meets_plane(code, c) != (lo < c < hi)
    checks.append(IdentityCheck('meets_plane_matches_interval', LINE_SAMPLES // 10, float(mismatch)))
    return checks


def run_identity_suite(samples: int = DUALITY_SAMPLES, seed: int = 0,
                       line_samples: int = LINE_SAMPLES) -> IdentityReport:
    """
    Esegue tutti i controlli.

    Args:
        samples: Input casuali per le identità vettoriali (gruppo, metrica, dualità)
        seed: Seed del generatore
        line_samples: Codici casuali per i controlli sui segmenti

    Returns:
        IdentityReport
    """
    rng = np.random.default_rng(seed)
    sections: List[Callable[[], List[IdentityCheck]]] = [
        lambda: _group_checks(rng, samples),
        lambda: _line_checks(rng, line_samples),
        _slab_checks,
        lambda: _duality_checks(rng, samples),
        lambda: _slice_chain_checks(rng, min(samples, LINE_SAMPLES)),
    ]
    checks = []
    for section in sections:
        checks.extend(section())

    report = IdentityReport(checks, seed)
    logger.info(f"Identity suite: {len(checks)} checks, max_residual={report.max_residual:.3e}, "
                f"failed={report.failed}")
    return report
