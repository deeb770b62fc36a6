"""
Campionatori derivati: proiezioni scalari, insiemi finiti, dilatazioni, fette.
"""

from typing import Optional

import numpy as np

from config import SLAB_MAX_TRIES
from heisenberg.group import dilate_arrays
from sets.abstract_sampler import Bounds, SetSampler
from utils.errors import ErrorCode, HeisKakeyaError


class FinitePointSampler(SetSampler):
    """Uniforme su una lista esplicita di punti (insiemi di altezze, controlli a un punto)."""

    def __init__(self, points: np.ndarray, label: str = "points", rng_seed: Optional[int] = None):
        points = np.asarray(points, dtype=float).reshape(-1, 3)
        if len(points) == 0:
            raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'setgen.FinitePointSampler', "Empty point list")
        super().__init__(label=label, rng_seed=rng_seed)
        self.points = points
        self._bounds = Bounds.from_points(points)

    @classmethod
    def on_line(cls, values: np.ndarray, label: str = "values", rng_seed: Optional[int] = None) -> 'FinitePointSampler':
        """Valori reali immersi come (v, 0, 0)."""
        values = np.asarray(values, dtype=float).ravel()
        points = np.zeros((len(values), 3))
        points[:, 0] = values
        return cls(points, label, rng_seed)

    @property
    def bounds(self) -> Bounds:
        return self._bounds

    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        rng = self._generator(rng)
        return self.points[rng.integers(0, len(self.points), size=n)]

    def restrict_x(self, lo: float, hi: float) -> Optional['FinitePointSampler']:
        kept = self.points[(self.points[:, 0] >= lo) & (self.points[:, 0] <= hi)]
        if len(kept) == 0:
            return None
        restricted = FinitePointSampler(kept, f"{self.label}[x∈{lo:g},{hi:g}]")
        restricted._rng = self._rng
        return restricted


class ProjectedSampler(SetSampler):
    """
    Proiezione scalare w ↦ (⟨u, w⟩ − center)·scale, immersa come (s, 0, 0).
    Con normalize=True il centro e la scala portano la proiezione della
    bounding box su [0, 1] (la dimensione è invariante per riscalamento).
    """

    def __init__(self, base: SetSampler, direction: np.ndarray, normalize: bool = False,
                 label: Optional[str] = None, rng_seed: Optional[int] = None):
        super().__init__(label=label or f"proj({base.label})", rng_seed=rng_seed)
        self.base = base
        self.direction = np.asarray(direction, dtype=float)

        projected = base.bounds.corners() @ self.direction
        lo, hi = float(projected.min()), float(projected.max())
        self.center, self.scale = 0.0, 1.0
        if normalize and hi - lo > 1e-12:
            self.center, self.scale = lo, 1.0 / (hi - lo)
        s_lo, s_hi = (lo - self.center) * self.scale, (hi - self.center) * self.scale
        self._bounds = Bounds((s_lo, 0.0, 0.0), (s_hi, 0.0, 0.0))

    @property
    def bounds(self) -> Bounds:
        return self._bounds

    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        rng = self._generator(rng)
        out = np.zeros((n, 3))
        out[:, 0] = (self.base.draw_batch(n, rng) @ self.direction - self.center) * self.scale
        return out


class DilatedSampler(SetSampler):
    """Immagine di un insieme tramite la dilatazione di Heisenberg δ_r."""

    def __init__(self, base: SetSampler, r: float, rng_seed: Optional[int] = None):
        super().__init__(label=f"dilate({r:g}, {base.label})", rng_seed=rng_seed)
        self.base = base
        self.r = r
        self._bounds = Bounds.from_points(dilate_arrays(r, base.bounds.corners()))

    @property
    def bounds(self) -> Bounds:
        return self._bounds

    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        rng = self._generator(rng)
        return dilate_arrays(self.r, self.base.draw_batch(n, rng))


class SlabSampler(SetSampler):
    """
    Restrizione per rejection sampling alla fetta {lo <= x <= hi}.
    Usato dagli insiemi senza restrizione in forma chiusa (es. attrattori IFS).
    """

    def __init__(self, base: SetSampler, lo: float, hi: float, max_tries: int = SLAB_MAX_TRIES):
        super().__init__(label=f"{base.label}[x∈{lo:g},{hi:g}]")
        self.base = base
        self.lo, self.hi = lo, hi
        self.max_tries = max_tries
        self._rng = base._rng
        b = base.bounds
        self._bounds = Bounds((max(b.lo[0], lo), b.lo[1], b.lo[2]), (min(b.hi[0], hi), b.hi[1], b.hi[2]))

    @property
    def bounds(self) -> Bounds:
        return self._bounds

    def probe(self) -> bool:
        """True se almeno un punto della fetta viene trovato entro max_tries estrazioni."""
        rng = np.random.default_rng(0)
        tried = 0
        while tried < self.max_tries:
            m = min(8192, self.max_tries - tried)
            x = self.base.draw_batch(m, rng)[:, 0]
            if np.any((x >= self.lo) & (x <= self.hi)):
                return True
            tried += m
        return False

    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        rng = self._generator(rng)
        collected = []
        remaining = n
        misses = 0
        while remaining > 0:
            m = max(4 * remaining, 1024)
            pts = self.base.draw_batch(m, rng)
            pts = pts[(pts[:, 0] >= self.lo) & (pts[:, 0] <= self.hi)][:remaining]
            if len(pts) == 0:
                misses += m
                if misses >= self.max_tries:
                    raise HeisKakeyaError(ErrorCode.EMPTY_SLAB, 'setgen.SlabSampler',
                                          f"No point of {self.base.label} found in x∈[{self.lo}, {self.hi}]")
                continue
            misses = 0
            collected.append(pts)
            remaining -= len(pts)
        return np.concatenate(collected)
