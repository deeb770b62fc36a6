"""
Indici spaziali a griglia per il pruning dei vicini nel packing greedy.

Le chiavi di cella sono impacchettate in int64 e tenute ordinate:
una query vettoriale è un searchsorted per ogni cella dello stencil.

- EuclideanGridIndex: celle cubiche di lato C·δ, stencil 3×3×3 (raggio di ricerca C·δ),
  con C costante di confronto d_E <= C·d_H sulla regione (C = 1 per la metrica euclidea).
- ShearedHeisenbergIndex: colonne δ×δ nel piano xy e, dentro ogni colonna, bin verticali
  di altezza 1.25·δ² nella coordinata t traslata a sinistra sull'angolo della colonna.
  Se d_H(p, q) < δ allora |Δx|, |Δy| < δ e |Δt̃| < (1/4 + √2/2)·δ² < 1.25·δ².
"""

import math
from abc import ABC, abstractmethod
from functools import lru_cache

import numpy as np

from config import COMPARABILITY_SAMPLES, COMPARABILITY_SAFETY, PACKING_INDEX
from dimension.metric import Metric
from heisenberg.group import dist_arrays
from logger.logger import get_logger
from sets.abstract_sampler import Bounds
from utils.errors import ErrorCode, HeisKakeyaError

logger = get_logger('dimest')

_BITS = 21
_OFFSET = 1 << (_BITS - 1)
# Margine sulle celle contro gli arrotondamenti di floor()
_CELL_SLACK = 1.0 + 1e-9
_STENCIL = np.array([(i, j, k) for i in (-1, 0, 1) for j in (-1, 0, 1) for k in (-1, 0, 1)], dtype=np.int64)


def _cell(values: np.ndarray, size: float) -> np.ndarray:
    scaled = np.floor(np.asarray(values, dtype=float) / size)
    if scaled.size and np.max(np.abs(scaled)) >= _OFFSET - 2:
        raise HeisKakeyaError(ErrorCode.INDEX_OVERFLOW, 'dimest.greedy_packing_count',
                              f"Cell coordinates exceed ±{_OFFSET} at cell size {size:g}")
    return scaled.astype(np.int64)


def _pack(kx: np.ndarray, ky: np.ndarray, kz: np.ndarray) -> np.ndarray:
    return ((kx + _OFFSET) << (2 * _BITS)) | ((ky + _OFFSET) << _BITS) | (kz + _OFFSET)


class GridIndex(ABC):
    """Insieme di punti accettati con query "esiste un punto a distanza < δ"."""

    def __init__(self, delta: float, metric: Metric):
        self.delta = delta
        self.metric = metric
        self._points = np.empty((256, 3))
        self._n = 0
        self._keys = np.empty(0, dtype=np.int64)
        self._ids = np.empty(0, dtype=np.int64)

    @abstractmethod
    def _store_keys(self, points: np.ndarray) -> np.ndarray:
        """Chiave della cella di ogni punto memorizzato, forma (n,)."""
        pass

    @abstractmethod
    def _probe_keys(self, points: np.ndarray) -> np.ndarray:
        """Chiavi delle celle da ispezionare per ogni query, forma (m, K)."""
        pass

    def __len__(self) -> int:
        return self._n

    @property
    def points(self) -> np.ndarray:
        return self._points[:self._n].copy()

    def add(self, points: np.ndarray):
        points = np.asarray(points, dtype=float).reshape(-1, 3)
        k = len(points)
        if k == 0:
            return
        if self._n + k > len(self._points):
            grown = np.empty((max(2 * len(self._points), self._n + k), 3))
            grown[:self._n] = self._points[:self._n]
            self._points = grown
        self._points[self._n:self._n + k] = points
        ids = np.arange(self._n, self._n + k, dtype=np.int64)
        self._n += k

        keys = self._store_keys(points)
        order = np.argsort(keys, kind='stable')
        pos = np.searchsorted(self._keys, keys[order], side='right')
        self._keys = np.insert(self._keys, pos, keys[order])
        self._ids = np.insert(self._ids, pos, ids[order])

    def blocked(self, queries: np.ndarray) -> np.ndarray:
        """
        Per ogni query, True se un punto memorizzato è a distanza < δ.

        Returns:
            np.ndarray: maschera booleana (m,)
        """
        queries = np.asarray(queries, dtype=float).reshape(-1, 3)
        m = len(queries)
        blocked = np.zeros(m, dtype=bool)
        if self._n == 0 or m == 0:
            return blocked

        probes = self._probe_keys(queries)
        width = probes.shape[1]
        flat = probes.ravel()
        lo = np.searchsorted(self._keys, flat, side='left')
        hi = np.searchsorted(self._keys, flat, side='right')
        counts = hi - lo
        total = int(counts.sum())
        if total == 0:
            return blocked

        owner = np.repeat(np.arange(m * width) // width, counts)
        within = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        ids = self._ids[np.repeat(lo, counts) + within]
        close = self.metric.distances(self._points[ids], queries[owner]) < self.delta
        blocked[owner[close]] = True
        return blocked


class EuclideanGridIndex(GridIndex):
    """Celle cubiche di lato C·δ; stencil 27 celle."""

    def __init__(self, delta: float, metric: Metric, comparability: float = 1.0):
        super().__init__(delta, metric)
        self.comparability = comparability
        self._size = comparability * delta * _CELL_SLACK

    def _store_keys(self, points: np.ndarray) -> np.ndarray:
        k = _cell(points, self._size)
        return _pack(k[:, 0], k[:, 1], k[:, 2])

    def _probe_keys(self, points: np.ndarray) -> np.ndarray:
        k = _cell(points, self._size)
        shifted = k[:, None, :] + _STENCIL[None, :, :]
        return _pack(shifted[..., 0], shifted[..., 1], shifted[..., 2])


class ShearedHeisenbergIndex(GridIndex):
    """Colonne δ×δ con bin verticali 1.25·δ² nella t traslata all'angolo della colonna."""

    def __init__(self, delta: float):
        super().__init__(delta, Metric.HEISENBERG)
        self._size = delta * _CELL_SLACK
        self._height = 1.25 * delta * delta * _CELL_SLACK

    def _sheared_t(self, points: np.ndarray, kx: np.ndarray, ky: np.ndarray) -> np.ndarray:
        # t dopo la traslazione a sinistra per (−X0, −Y0, 0)
        x0 = kx * self._size
        y0 = ky * self._size
        return points[..., 2] - 0.5 * (x0 * points[..., 1] - y0 * points[..., 0])

    def _store_keys(self, points: np.ndarray) -> np.ndarray:
        kx = _cell(points[:, 0], self._size)
        ky = _cell(points[:, 1], self._size)
        kt = _cell(self._sheared_t(points, kx, ky), self._height)
        return _pack(kx, ky, kt)

    def _probe_keys(self, points: np.ndarray) -> np.ndarray:
        kx = _cell(points[:, 0], self._size)
        ky = _cell(points[:, 1], self._size)
        columns = []
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                cx, cy = kx + i, ky + j
                kt = _cell(self._sheared_t(points, cx, cy), self._height)
                for k in (-1, 0, 1):
                    columns.append(_pack(cx, cy, kt + k))
        return np.stack(columns, axis=1)


@lru_cache(maxsize=64)
def comparability_constant(bounds: Bounds, delta: float,
                           n_samples: int = COMPARABILITY_SAMPLES,
                           safety: float = COMPARABILITY_SAFETY) -> float:
    """
    Costante C con d_E <= C·d_H per coppie a distanza di Heisenberg < δ nella box.

    Bound analitico: |Δt| <= d_H²/4 + R·d_H/2 con R = max √(x²+y²) sulla box,
    quindi C = √(1 + (δ/4 + R/2)²). Validato contro il massimo empirico di d_E/d_H
    su coppie casuali, moltiplicato per il fattore di sicurezza.
    """
    radius = bounds.horizontal_radius
    analytic = math.sqrt(1.0 + (delta / 4.0 + radius / 2.0) ** 2)

    rng = np.random.default_rng(0)
    lo, hi = np.array(bounds.lo), np.array(bounds.hi)
    p = rng.uniform(lo, hi, size=(n_samples, 3))
    q = rng.uniform(lo, hi, size=(n_samples, 3))
    dh = dist_arrays(p, q)
    de = np.linalg.norm(p - q, axis=1)
    positive = dh > 0
    empirical = float(np.max(de[positive] / dh[positive])) if positive.any() else 1.0

    constant = max(analytic, safety * empirical)
    logger.debug(f"Comparability constant C={constant:.4f} (analytic {analytic:.4f}, empirical {empirical:.4f})")
    return constant


def make_index(metric: Metric, delta: float, bounds: Bounds, kind: str = PACKING_INDEX) -> GridIndex:
    """
    Sceglie l'indice per la metrica.

    Args:
        metric: EUCLIDEAN o HEISENBERG
        delta: Scala di separazione
        bounds: Bounding box dell'insieme (per la costante di confronto)
        kind: "sheared" o "euclidean" (solo per HEISENBERG)
    """
    if metric is Metric.EUCLIDEAN:
        return EuclideanGridIndex(delta, metric, 1.0)
    if kind == 'sheared':
        return ShearedHeisenbergIndex(delta)
    if kind == 'euclidean':
        return EuclideanGridIndex(delta, metric, comparability_constant(bounds, delta))
    raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'dimest.greedy_packing_count', f"Unknown index kind {kind!r}")
