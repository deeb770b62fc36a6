"""
Campionatore dell'unione dei segmenti orizzontali di una CodeFamily.
"""

from typing import Optional, Tuple

import numpy as np

from heisenberg.lines import Chart, CodeFamily
from sets.abstract_sampler import Bounds, SetSampler
from utils.errors import ErrorCode, HeisKakeyaError


class UnionSampler(SetSampler):
    """
    Estrae un codice (con probabilità `probs`, uniforme di default) e poi s uniforme
    nella finestra di parametro del codice; ritorna line_point(code, s).
    """

    def __init__(self, family: CodeFamily, rng_seed: Optional[int] = None,
                 s_windows: Optional[Tuple[np.ndarray, np.ndarray]] = None,
                 probs: Optional[np.ndarray] = None):
        if len(family) == 0:
            raise HeisKakeyaError(ErrorCode.EMPTY_FAMILY, 'setgen.union_sampler', "Cannot sample an empty family")
        super().__init__(label=family.label, rng_seed=rng_seed)
        self.family = family

        self._a = np.array([c.a for c in family], dtype=float)
        self._b = np.array([c.b for c in family], dtype=float)
        self._d = np.array([c.d for c in family], dtype=float)
        self._is_x = np.array([c.chart is Chart.X_PARAM for c in family])
        eps = np.array([c.eps for c in family], dtype=float)
        length = 1.0 / np.sqrt(self._b ** 2 + 1.0)

        if s_windows is None:
            self._s_lo, self._s_hi = eps, eps + length
        else:
            self._s_lo, self._s_hi = s_windows
        self._probs = probs if probs is not None else np.full(len(family), 1.0 / len(family))

        ends = np.concatenate([self._points(np.arange(len(family)), self._s_lo),
                               self._points(np.arange(len(family)), self._s_hi)])
        self._bounds = Bounds.from_points(ends[np.concatenate([self._probs > 0, self._probs > 0])])

    @property
    def bounds(self) -> Bounds:
        return self._bounds

    def _points(self, idx: np.ndarray, s: np.ndarray) -> np.ndarray:
        a, b, d, is_x = self._a[idx], self._b[idx], self._d[idx], self._is_x[idx]
        along = b * s + a
        return np.stack([
            np.where(is_x, s, along),
            np.where(is_x, along, s),
            np.where(is_x, -a * s / 2.0, a * s / 2.0) + d,
        ], axis=1)

    def draw_with_codes(self, n: int, rng: Optional[np.random.Generator] = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        Come draw_batch ma ritorna anche l'indice del codice sorgente di ogni punto.

        Returns:
            Tuple (punti (n, 3), indici (n,))
        """
        rng = self._generator(rng)
        idx = rng.choice(len(self._probs), size=n, p=self._probs)
        u = rng.random(n)
        # Intervalli aperti: escludi l'estremo sinistro
        u[u == 0.0] = 0.5
        s = self._s_lo[idx] + u * (self._s_hi[idx] - self._s_lo[idx])
        return self._points(idx, s), idx

    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        return self.draw_with_codes(n, rng)[0]

    def restrict_x(self, lo: float, hi: float) -> Optional['UnionSampler']:
        """
        Restrizione esatta alla fetta x ∈ [lo, hi]: ogni codice viene pesato
        con la frazione del suo intervallo di parametro che cade nella fetta.
        """
        s_lo, s_hi = self._s_lo.copy(), self._s_hi.copy()
        weight = np.zeros(len(s_lo))

        x = self._is_x
        s_lo[x] = np.maximum(s_lo[x], lo)
        s_hi[x] = np.minimum(s_hi[x], hi)

        y_sloped = ~x & (self._b != 0)
        with np.errstate(divide='ignore', invalid='ignore'):
            p1 = (lo - self._a) / self._b
            p2 = (hi - self._a) / self._b
        s_lo[y_sloped] = np.maximum(s_lo[y_sloped], np.minimum(p1, p2)[y_sloped])
        s_hi[y_sloped] = np.minimum(s_hi[y_sloped], np.maximum(p1, p2)[y_sloped])

        span = np.maximum(s_hi - s_lo, 0.0)
        full = self._s_hi - self._s_lo
        active = x | y_sloped
        weight[active] = span[active] / full[active]

        # Carta Y con b = 0: x = a costante
        y_flat = ~x & (self._b == 0)
        weight[y_flat] = ((self._a >= lo) & (self._a <= hi))[y_flat].astype(float)

        weight *= self._probs
        if weight.sum() <= 0:
            return None
        restricted = UnionSampler(self.family, s_windows=(s_lo, s_hi), probs=weight / weight.sum())
        restricted._rng = self._rng
        restricted.label = f"{self.label}[x∈{lo:g},{hi:g}]"
        return restricted


def union_sampler(family: CodeFamily, rng_seed: Optional[int] = None) -> UnionSampler:
    """
    Campionatore dell'unione dei segmenti di una famiglia.

    Raises:
        HeisKakeyaError: famiglia vuota
    """
    return UnionSampler(family, rng_seed)
