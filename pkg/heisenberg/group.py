"""
Aritmetica esatta del primo gruppo di Heisenberg e metrica di Korányi.

Due API parallele:
- scalare, su HPoint (mul, inv, knorm, dist, dilate)
- vettoriale numpy, su array (n, 3) (mul_arrays, inv_arrays, knorm_arrays, dist_arrays, dilate_arrays)
"""

import math
from dataclasses import dataclass

import numpy as np

from utils.errors import ErrorCode, HeisKakeyaError


@dataclass(frozen=True)
class HPoint:
    """Punto (x, y, t) del gruppo di Heisenberg in coordinate esponenziali."""

    x: float
    y: float
    t: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.t)):
            raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'hgroup.HPoint',
                                  f"Non-finite coordinates: {(self.x, self.y, self.t)}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.t], dtype=float)

    def __iter__(self):
        return iter((self.x, self.y, self.t))


IDENTITY = HPoint(0.0, 0.0, 0.0)


# ============================================================
# API SCALARE
# ============================================================

def mul(p: HPoint, q: HPoint) -> HPoint:
    """Prodotto di gruppo: (x+x', y+y', t+t'+½(xy'−x'y))."""
    return HPoint(p.x + q.x, p.y + q.y, p.t + q.t + 0.5 * (p.x * q.y - q.x * p.y))


def inv(p: HPoint) -> HPoint:
    return HPoint(-p.x, -p.y, -p.t)


def knorm(p: HPoint) -> float:
    """Norma di Korányi ((x²+y²)² + 16t²)^(1/4)."""
    r2 = p.x * p.x + p.y * p.y
    return (r2 * r2 + 16.0 * p.t * p.t) ** 0.25


def dist(p: HPoint, q: HPoint) -> float:
    """Distanza di Korányi d(p, q) = ‖q⁻¹ p‖, invariante a sinistra."""
    return knorm(mul(inv(q), p))


def dilate(r: float, p: HPoint) -> HPoint:
    """
    Dilatazione di Heisenberg δ_r(x, y, t) = (r x, r y, r² t).
    È un automorfismo di gruppo e la norma è 1-omogenea rispetto ad essa.

    Raises:
        HeisKakeyaError: se r <= 0
    """
    if not r > 0:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'hgroup.dilate',
                              f"Dilation factor must be > 0, got {r}")
    return HPoint(r * p.x, r * p.y, r * r * p.t)


# ============================================================
# API VETTORIALE (array di forma (n, 3) o (3,))
# ============================================================

def mul_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    out = p + q
    out[..., 2] += 0.5 * (p[..., 0] * q[..., 1] - q[..., 0] * p[..., 1])
    return out


def inv_arrays(p: np.ndarray) -> np.ndarray:
    return -np.asarray(p, dtype=float)


def knorm_arrays(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    r2 = p[..., 0] ** 2 + p[..., 1] ** 2
    return np.sqrt(np.sqrt(r2 * r2 + 16.0 * p[..., 2] ** 2))


def dist_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """
    Distanze di Korányi elemento per elemento (con broadcasting).
    Forma chiusa di knorm(q⁻¹p): (Δx, Δy, Δt + ½(p_x q_y − q_x p_y)).
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    dx = p[..., 0] - q[..., 0]
    dy = p[..., 1] - q[..., 1]
    dt = p[..., 2] - q[..., 2] + 0.5 * (p[..., 0] * q[..., 1] - q[..., 0] * p[..., 1])
    r2 = dx * dx + dy * dy
    return np.sqrt(np.sqrt(r2 * r2 + 16.0 * dt * dt))


def dilate_arrays(r: float, p: np.ndarray) -> np.ndarray:
    if not r > 0:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'hgroup.dilate',
                              f"Dilation factor must be > 0, got {r}")
    out = np.array(p, dtype=float, copy=True)
    out[..., 0:2] *= r
    out[..., 2] *= r * r
    return out
