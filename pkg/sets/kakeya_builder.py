"""
Costruzione di unioni di Kakeya come famiglie di codici e verifica
della proprietà di Kakeya su una rete finita di direzioni.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from heisenberg.group import HPoint
from heisenberg.lines import Chart, CodeFamily, code_from_translation, direction_angle
from logger.logger import get_logger
from utils.errors import ErrorCode, HeisKakeyaError

logger = get_logger('setgen')

# Oltre π/3 dall'asse x la pendenza supera √3: carta Y
STEEP_ANGLE = math.pi / 3.0


class Placement(Enum):
    ORIGIN = "origin"
    RANDOM = "random"
    PLANE = "plane"


@dataclass
class KakeyaReport:
    """Esito di verify_kakeya."""

    covered: int
    missing: List[float] = field(default_factory=list)
    angles: int = 0
    ang_tol: float = 0.0

    def to_dict(self) -> dict:
        return {'covered': self.covered, 'missing': self.missing, 'angles': self.angles, 'ang_tol': self.ang_tol}


def kakeya_union_builder(m: int, placement: Placement, rng_seed: Optional[int] = 0) -> CodeFamily:
    """
    Un segmento orizzontale unitario per ogni direzione θ_i = iπ/m.

    Args:
        m: Numero di direzioni (>= 4)
        placement: ORIGIN (q = 0), RANDOM (q uniforme in [0,1]³) o PLANE (segmento in {t=0})
        rng_seed: Seed per le traslazioni

    Returns:
        CodeFamily: famiglia con m codici; le direzioni ripide usano la carta Y
    """
    if m < 4:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'setgen.kakeya_union_builder', f"Need m >= 4, got {m}")

    rng = np.random.default_rng(rng_seed)
    codes = []
    for i in range(m):
        theta = i * math.pi / m
        steep = STEEP_ANGLE <= theta <= math.pi - STEEP_ANGLE
        if steep:
            chart, slope = Chart.Y_PARAM, math.cos(theta) / math.sin(theta)
        else:
            chart, slope = Chart.X_PARAM, math.tan(theta)

        if placement is Placement.ORIGIN:
            q = HPoint(0.0, 0.0, 0.0)
        elif placement is Placement.RANDOM:
            q = HPoint(*rng.random(3))
        else:
            u = float(rng.random())
            # q = (u, b u, 0) in carta X, (b u, u, 0) in carta Y: a = d = 0
            q = HPoint(slope * u, u, 0.0) if steep else HPoint(u, slope * u, 0.0)
        codes.append(code_from_translation(q, slope, chart))

    family = CodeFamily(codes, label=f"kakeya_{placement.value}_{m}")
    logger.debug(f"Built {family.label}: {len(family)} codes")
    return family


def verify_kakeya(family: CodeFamily, angles: int, ang_tol: float) -> KakeyaReport:
    """
    Verifica che per ogni direzione θ_j = jπ/angles la famiglia contenga un codice
    con direzione xy entro ang_tol (direzioni non orientate, modulo π).
    """
    if angles < 1:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'setgen.verify_kakeya', f"Need angles >= 1, got {angles}")

    targets = np.arange(angles) * math.pi / angles
    if len(family) == 0:
        return KakeyaReport(0, [float(t) for t in targets], angles, ang_tol)

    directions = np.array([direction_angle(code) for code in family])
    diff = np.abs(targets[:, None] - directions[None, :]) % math.pi
    gap = np.minimum(diff, math.pi - diff).min(axis=1)
    ok = gap <= ang_tol
    return KakeyaReport(int(ok.sum()), [float(t) for t in targets[~ok]], angles, ang_tol)
