"""
Insiemi primitivi di calibrazione: disco nel piano {t=0}, asse t,
segmento sull'asse x, cubo.
"""

import math
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from sets.abstract_sampler import Bounds, SetSampler
from utils.errors import ErrorCode, HeisKakeyaError


class PrimitiveKind(Enum):
    PLANE_DISC = "plane"
    T_AXIS = "t-axis"
    X_AXIS_SEGMENT = "x-segment"
    CUBE = "cube"


class PrimitiveSampler(SetSampler):
    """
    Campionatore esatto di un insieme primitivo, eventualmente ristretto
    ad una fetta verticale x ∈ [x_lo, x_hi].
    """

    def __init__(self, kind: PrimitiveKind, size: float, rng_seed: Optional[int] = None,
                 x_window: Optional[Tuple[float, float]] = None):
        if not size > 0:
            raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'setgen.primitive_sampler',
                                  f"Size must be > 0, got {size}")
        super().__init__(label=f"{kind.value}({size:g})", rng_seed=rng_seed)
        self.kind = kind
        self.size = float(size)
        self.x_window = x_window

    # ------------------------------------------------------------
    # Geometria
    # ------------------------------------------------------------

    def _full_x_range(self) -> Tuple[float, float]:
        s = self.size
        return {
            PrimitiveKind.PLANE_DISC: (-s, s),
            PrimitiveKind.T_AXIS: (0.0, 0.0),
            PrimitiveKind.X_AXIS_SEGMENT: (0.0, s),
            PrimitiveKind.CUBE: (0.0, s),
        }[self.kind]

    def _x_range(self) -> Tuple[float, float]:
        lo, hi = self._full_x_range()
        if self.x_window is not None:
            lo, hi = max(lo, self.x_window[0]), min(hi, self.x_window[1])
        return lo, hi

    @property
    def bounds(self) -> Bounds:
        s = self.size
        x_lo, x_hi = self._x_range()
        if self.kind is PrimitiveKind.PLANE_DISC:
            # Semicorda massima sulla fetta
            nearest = 0.0 if x_lo <= 0.0 <= x_hi else min(abs(x_lo), abs(x_hi))
            half = math.sqrt(max(s * s - nearest * nearest, 0.0))
            return Bounds((x_lo, -half, 0.0), (x_hi, half, 0.0))
        if self.kind is PrimitiveKind.T_AXIS:
            return Bounds((0.0, 0.0, 0.0), (0.0, 0.0, s))
        if self.kind is PrimitiveKind.X_AXIS_SEGMENT:
            return Bounds((x_lo, 0.0, 0.0), (x_hi, 0.0, 0.0))
        return Bounds((x_lo, 0.0, 0.0), (x_hi, s, s))

    def membership_residual(self, points: np.ndarray) -> np.ndarray:
        """Violazione delle equazioni che definiscono l'insieme (0 per punti membri)."""
        p = np.asarray(points, dtype=float).reshape(-1, 3)
        s = self.size
        if self.kind is PrimitiveKind.PLANE_DISC:
            return np.abs(p[:, 2]) + np.maximum(np.hypot(p[:, 0], p[:, 1]) - s, 0.0)
        if self.kind is PrimitiveKind.T_AXIS:
            return np.abs(p[:, 0]) + np.abs(p[:, 1]) + np.maximum(-p[:, 2], 0) + np.maximum(p[:, 2] - s, 0)
        if self.kind is PrimitiveKind.X_AXIS_SEGMENT:
            return np.abs(p[:, 1]) + np.abs(p[:, 2]) + np.maximum(-p[:, 0], 0) + np.maximum(p[:, 0] - s, 0)
        return (np.maximum(-p, 0) + np.maximum(p - s, 0)).sum(axis=1)

    # ------------------------------------------------------------
    # Estrazione
    # ------------------------------------------------------------

    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        rng = self._generator(rng)
        s = self.size
        out = np.zeros((n, 3))
        if self.kind is PrimitiveKind.PLANE_DISC:
            out[:, :2] = self._draw_disc(n, rng)
        elif self.kind is PrimitiveKind.T_AXIS:
            out[:, 2] = rng.uniform(0.0, s, n)
        elif self.kind is PrimitiveKind.X_AXIS_SEGMENT:
            out[:, 0] = rng.uniform(*self._x_range(), n)
        else:
            out[:, 0] = rng.uniform(*self._x_range(), n)
            out[:, 1:] = rng.uniform(0.0, s, (n, 2))
        return out

    def _draw_disc(self, n: int, rng: np.random.Generator) -> np.ndarray:
        s = self.size
        if self.x_window is None:
            r = s * np.sqrt(rng.random(n))
            phi = rng.uniform(0.0, 2.0 * math.pi, n)
            return np.stack([r * np.cos(phi), r * np.sin(phi)], axis=1)

        # Rejection nel rettangolo della fetta
        b = self.bounds
        collected = []
        remaining = n
        while remaining > 0:
            m = max(2 * remaining, 64)
            xy = np.stack([rng.uniform(b.lo[0], b.hi[0], m), rng.uniform(b.lo[1], b.hi[1], m)], axis=1)
            xy = xy[xy[:, 0] ** 2 + xy[:, 1] ** 2 <= s * s][:remaining]
            collected.append(xy)
            remaining -= len(xy)
        return np.concatenate(collected)

    def restrict_x(self, lo: float, hi: float) -> Optional['PrimitiveSampler']:
        x_lo, x_hi = self._x_range()
        new_lo, new_hi = max(x_lo, lo), min(x_hi, hi)
        if new_lo > new_hi:
            return None
        restricted = PrimitiveSampler(self.kind, self.size, x_window=(new_lo, new_hi))
        restricted._rng = self._rng
        restricted.label = f"{self.label}[x∈{lo:g},{hi:g}]"
        return restricted


def primitive_sampler(kind: PrimitiveKind, size: float, rng_seed: Optional[int] = None) -> PrimitiveSampler:
    """
    Crea il campionatore di un insieme primitivo.

    Args:
        kind: PLANE_DISC, T_AXIS, X_AXIS_SEGMENT o CUBE
        size: Raggio (disco) o lato/lunghezza (> 0)
        rng_seed: Seed del generatore interno

    Raises:
        HeisKakeyaError: size <= 0
    """
    return PrimitiveSampler(kind, size, rng_seed)
