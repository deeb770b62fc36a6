"""
Scala di delta strettamente decrescente usata per le stime di dimensione.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config import (
    DEFAULT_DELTA_MAX, DEFAULT_DELTA_MIN, DEFAULT_LEVELS,
    LADDER_MIN_RATIO, LADDER_MAX_RATIO,
)
from utils.errors import ErrorCode, HeisKakeyaError

# Tolleranza sui rapporti: 0.3 * 2^(-k/2) ha rapporto √2 a meno di arrotondamenti
_RATIO_SLACK = 1e-9


@dataclass(frozen=True)
class ScaleLadder:
    """Lista di delta > 0 strettamente decrescente, rapporto consecutivo in [1.2, 2.0]."""

    deltas: Tuple[float, ...]

    def __post_init__(self):
        deltas = tuple(float(d) for d in self.deltas)
        object.__setattr__(self, 'deltas', deltas)
        if len(deltas) == 0 or any(not d > 0 for d in deltas):
            raise HeisKakeyaError(ErrorCode.INVALID_LADDER, 'dimest.ScaleLadder', f"Deltas must be > 0: {deltas}")
        for big, small in zip(deltas, deltas[1:]):
            if not small < big:
                raise HeisKakeyaError(ErrorCode.INVALID_LADDER, 'dimest.ScaleLadder',
                                      f"Ladder not strictly decreasing: {big} -> {small}")
            ratio = big / small
            if ratio < LADDER_MIN_RATIO - _RATIO_SLACK or ratio > LADDER_MAX_RATIO + _RATIO_SLACK:
                raise HeisKakeyaError(ErrorCode.INVALID_LADDER, 'dimest.ScaleLadder',
                                      f"Ratio {ratio:.4f} between {big} and {small} outside "
                                      f"[{LADDER_MIN_RATIO}, {LADDER_MAX_RATIO}]")

    @classmethod
    def geometric(cls, delta_max: float, delta_min: float, levels: int) -> 'ScaleLadder':
        """
        Scala geometrica da delta_max a delta_min con `levels` livelli.

        Raises:
            HeisKakeyaError: scala non decrescente o rapporti fuori range
        """
        if levels < 2:
            raise HeisKakeyaError(ErrorCode.INVALID_LADDER, 'dimest.ScaleLadder', f"Need at least 2 levels, got {levels}")
        if not (delta_max > 0 and delta_min > 0) or delta_min >= delta_max:
            raise HeisKakeyaError(ErrorCode.INVALID_LADDER, 'dimest.ScaleLadder',
                                  f"Ladder not decreasing: delta_max={delta_max}, delta_min={delta_min}")
        k = np.arange(levels) / (levels - 1)
        return cls(tuple(delta_max * (delta_min / delta_max) ** k))

    @classmethod
    def default(cls) -> 'ScaleLadder':
        return cls.geometric(DEFAULT_DELTA_MAX, DEFAULT_DELTA_MIN, DEFAULT_LEVELS)

    def __len__(self) -> int:
        return len(self.deltas)

    def __iter__(self):
        return iter(self.deltas)
