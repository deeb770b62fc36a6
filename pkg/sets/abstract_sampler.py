"""
Classe base astratta per tutti i campionatori di insiemi.
Definisce l'interfaccia comune che ogni insieme deve implementare:
estrazione di punti esatti dell'insieme e bounding box.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class Bounds:
    """Bounding box allineata agli assi in R³."""

    lo: Tuple[float, float, float]
    hi: Tuple[float, float, float]

    @classmethod
    def from_points(cls, points: np.ndarray) -> 'Bounds':
        points = np.asarray(points, dtype=float).reshape(-1, 3)
        return cls(tuple(float(v) for v in points.min(axis=0)), tuple(float(v) for v in points.max(axis=0)))

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, 3)
        return np.all((points >= np.array(self.lo) - tol) & (points <= np.array(self.hi) + tol), axis=1)

    @property
    def extent(self) -> float:
        """Diametro euclideo della box."""
        return float(np.linalg.norm(np.array(self.hi) - np.array(self.lo)))

    @property
    def horizontal_radius(self) -> float:
        """max √(x²+y²) sulla box (serve alla costante di confronto metrico)."""
        rx = max(abs(self.lo[0]), abs(self.hi[0]))
        ry = max(abs(self.lo[1]), abs(self.hi[1]))
        return math.hypot(rx, ry)

    def corners(self) -> np.ndarray:
        return np.array([[x, y, t] for x in (self.lo[0], self.hi[0])
                         for y in (self.lo[1], self.hi[1])
                         for t in (self.lo[2], self.hi[2])], dtype=float)

    def overlaps_x(self, lo: float, hi: float) -> bool:
        return lo <= self.hi[0] and hi >= self.lo[0]


class SetSampler(ABC):
    """
    Classe astratta che definisce l'interfaccia per gli insiemi campionabili.
    Ogni punto estratto appartiene all'insieme (errore di rappresentazione ≤ 1e-12)
    e sta dentro `bounds`.

    Un'istanza possiede il proprio generatore: non è condivisibile tra thread,
    i task paralleli passano a draw_batch un generatore proprio.
    """

    def __init__(self, label: str, rng_seed: Optional[int] = None):
        """
        Inizializza il campionatore.

        Args:
            label: Nome descrittivo dell'insieme (es. "plane_disc(1)")
            rng_seed: Seed del generatore interno (usato quando draw non riceve rng)
        """
        self.label = label
        self._rng = np.random.default_rng(rng_seed)

    @property
    @abstractmethod
    def bounds(self) -> Bounds:
        """Bounding box dell'insieme."""
        pass

    @abstractmethod
    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        """
        Estrae n punti dell'insieme.
        Questo metodo DEVE essere implementato da ogni insieme concreto.

        Returns:
            np.ndarray: Array (n, 3)
        """
        pass

    def draw(self, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        """Un singolo punto (3,) dell'insieme."""
        return self.draw_batch(1, rng)[0]

    def _generator(self, rng: Optional[np.random.Generator]) -> np.random.Generator:
        return rng if rng is not None else self._rng

    def restrict_x(self, lo: float, hi: float) -> Optional['SetSampler']:
        """
        Restrizione alla fetta {lo <= x <= hi}.
        Default: rejection sampling sull'insieme intero. Ritorna None se la fetta è vuota.
        Le sottoclassi con una forma chiusa la sovrascrivono.
        """
        from sets.derived_samplers import SlabSampler

        if not self.bounds.overlaps_x(lo, hi):
            return None
        slab = SlabSampler(self, lo, hi)
        return slab if slab.probe() else None
