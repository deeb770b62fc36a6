"""
Attrattori di IFS di similitudini (senza rotazione) w ↦ r·w + v in R³,
campionati tramite parole casuali di lunghezza fissata.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from scipy.optimize import brentq

from config import IFS_DEPTH
from sets.abstract_sampler import Bounds, SetSampler
from utils.errors import ErrorCode, HeisKakeyaError


@dataclass(frozen=True)
class SimilarityMap:
    """Contrazione w ↦ ratio·w + offset."""

    ratio: float
    offset: tuple

    def to_dict(self) -> dict:
        return {'ratio': self.ratio, 'offset': list(self.offset)}


@dataclass
class IfsSpec:
    """Lista di similitudini contrattive e profondità delle parole."""

    maps: List[SimilarityMap] = field(default_factory=list)
    depth: int = IFS_DEPTH

    def __post_init__(self):
        if not self.maps:
            raise HeisKakeyaError(ErrorCode.INVALID_IFS, 'setgen.IfsSpec', "IFS needs at least one map")
        if self.depth < 1:
            raise HeisKakeyaError(ErrorCode.INVALID_IFS, 'setgen.ifs_sampler', f"Depth must be >= 1, got {self.depth}")
        for m in self.maps:
            if not 0.0 < m.ratio < 1.0:
                raise HeisKakeyaError(ErrorCode.INVALID_IFS, 'setgen.IfsSpec', f"Ratio must be in (0,1), got {m.ratio}")
            if len(m.offset) != 3:
                raise HeisKakeyaError(ErrorCode.INVALID_IFS, 'setgen.IfsSpec', f"Offset must have 3 components: {m.offset}")

    @property
    def ratios(self) -> np.ndarray:
        return np.array([m.ratio for m in self.maps], dtype=float)

    @property
    def offsets(self) -> np.ndarray:
        return np.array([m.offset for m in self.maps], dtype=float)

    def similarity_dimension(self) -> float:
        """Soluzione s dell'equazione di Moran Σ rᵢ^s = 1."""
        ratios = self.ratios
        if len(ratios) == 1:
            return 0.0
        return float(brentq(lambda s: np.sum(ratios ** s) - 1.0, 0.0, 64.0, xtol=1e-14))

    def with_depth(self, depth: int) -> 'IfsSpec':
        return IfsSpec(list(self.maps), depth)

    def to_dict(self) -> dict:
        return {'maps': [m.to_dict() for m in self.maps], 'depth': self.depth}

    @classmethod
    def from_dict(cls, data: dict) -> 'IfsSpec':
        try:
            maps = [SimilarityMap(float(m['ratio']), tuple(float(v) for v in m['offset'])) for m in data['maps']]
            depth = int(data.get('depth', IFS_DEPTH))
        except (KeyError, TypeError, ValueError) as e:
            raise HeisKakeyaError(ErrorCode.INVALID_IFS, 'setgen.IfsSpec', f"Malformed IFS spec: {e}")
        return cls(maps, depth)

    @classmethod
    def load(cls, source: Union[str, Path]) -> 'IfsSpec':
        """
        Risolve un preset (CANTOR2, CANTOR4), un file JSON o JSON inline.
        """
        text = str(source).strip()
        if text.upper() in IFS_PRESETS:
            return IFS_PRESETS[text.upper()]
        try:
            data = json.loads(text) if text.startswith('{') else json.loads(Path(text).read_text(encoding='utf-8'))
        except (OSError, json.JSONDecodeError) as e:
            raise HeisKakeyaError(ErrorCode.UNKNOWN_SOURCE, 'setgen.IfsSpec', f"Cannot read IFS {text!r}: {e}")
        return cls.from_dict(data)


_THIRD = 1.0 / 3.0
_TWO_THIRDS = 2.0 / 3.0

IFS_PRESETS = {
    # Cantor lungo la diagonale del cubo unitario: dim = log 2 / log 3 ≈ 0.6309
    'CANTOR2': IfsSpec([
        SimilarityMap(_THIRD, (0.0, 0.0, 0.0)),
        SimilarityMap(_THIRD, (_TWO_THIRDS, _TWO_THIRDS, _TWO_THIRDS)),
    ]),
    # Quattro vertici alterni del cubo, fortemente separati: dim = log 4 / log 3 ≈ 1.2619
    'CANTOR4': IfsSpec([
        SimilarityMap(_THIRD, (0.0, 0.0, 0.0)),
        SimilarityMap(_THIRD, (_TWO_THIRDS, _TWO_THIRDS, 0.0)),
        SimilarityMap(_THIRD, (_TWO_THIRDS, 0.0, _TWO_THIRDS)),
        SimilarityMap(_THIRD, (0.0, _TWO_THIRDS, _TWO_THIRDS)),
    ]),
}


class IfsSampler(SetSampler):
    """
    Applica una parola casuale uniforme di lunghezza `depth` al punto fisso
    della prima mappa. Distanza dall'attrattore ≤ (max ratio)^depth · diam.
    """

    def __init__(self, spec: IfsSpec, rng_seed: Optional[int] = None, label: str = "ifs"):
        super().__init__(label=label, rng_seed=rng_seed)
        self.spec = spec
        self._ratios = spec.ratios
        self._offsets = spec.offsets
        fixed = self._offsets / (1.0 - self._ratios)[:, None]
        self._start = fixed[0]
        # Box invariante: inviluppo dei punti fissi
        self._bounds = Bounds.from_points(fixed)

    @property
    def bounds(self) -> Bounds:
        return self._bounds

    def draw_batch(self, n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        rng = self._generator(rng)
        points = np.tile(self._start, (n, 1))
        for _ in range(self.spec.depth):
            idx = rng.integers(0, len(self._ratios), size=n)
            points = self._ratios[idx][:, None] * points + self._offsets[idx]
        return points


def ifs_sampler(spec: IfsSpec, rng_seed: Optional[int] = None, label: Optional[str] = None) -> IfsSampler:
    """
    Crea il campionatore dell'attrattore.

    Raises:
        HeisKakeyaError: depth < 1 (già in IfsSpec)
    """
    if spec.depth < 1:
        raise HeisKakeyaError(ErrorCode.INVALID_IFS, 'setgen.ifs_sampler', f"Depth must be >= 1, got {spec.depth}")
    if label is None:
        label = next((name for name, preset in IFS_PRESETS.items() if preset.maps == spec.maps), "ifs")
    return IfsSampler(spec, rng_seed, label)
