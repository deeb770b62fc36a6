"""
Spazio delle rette: restrizione L(E, c) di una famiglia al piano {x = c}
e proiezioni π₁₂₃ (a, b, d) e π₂ (b) dei codici.
"""

from enum import Enum

import numpy as np

from heisenberg.lines import SQRT3, Chart, CodeFamily, SegmentCode
from utils.errors import ErrorCode, HeisKakeyaError


class ProjectionAxes(Enum):
    P123 = "p123"
    P2 = "p2"


def meets_plane(code: SegmentCode, c: float) -> bool:
    """True se c sta nell'intervallo aperto (ε, ε + 1/√(b²+1)) del segmento."""
    if code.chart is not Chart.X_PARAM:
        raise HeisKakeyaError(ErrorCode.INVALID_CODE, 'duality.meets_plane', "Operation requires an X_PARAM code")
    lo, hi = code.interval
    return lo < c < hi


def restrict_family(family: CodeFamily, c: float) -> CodeFamily:
    """
    Sottofamiglia dei codici in carta X con |b| < √3 che incontrano {x = c}.
    I codici in carta Y sono scartati, non rifiutati.
    """
    kept = [code for code in family
            if code.chart is Chart.X_PARAM and abs(code.b) < SQRT3 and meets_plane(code, c)]
    return family.subfamily(kept, f"{family.label}|x={c:g}")


def project_family(family: CodeFamily, axes: ProjectionAxes) -> np.ndarray:
    """
    Proiezione dei codici senza duplicati, nell'ordine della famiglia.

    Returns:
        np.ndarray: (k, 3) di punti (a, b, d) per P123, (k,) di pendenze b per P2

    Raises:
        HeisKakeyaError: codici in carta Y
    """
    if any(code.chart is not Chart.X_PARAM for code in family):
        raise HeisKakeyaError(ErrorCode.INVALID_CODE, 'duality.project_family', "Projection requires X_PARAM codes only")
    if axes is ProjectionAxes.P2:
        return np.array(list(dict.fromkeys(code.b for code in family)), dtype=float)
    unique = dict.fromkeys((code.a, code.b, code.d) for code in family)
    return np.array(list(unique), dtype=float).reshape(-1, 3)
