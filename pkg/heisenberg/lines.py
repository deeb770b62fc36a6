"""
Rette e segmenti orizzontali unitari e la loro codifica (a, b, d, ε).

Carta X_PARAM (direzione (1, b), parametro s = x):
    l(s) = (s, b s + a, −a s/2 + d),  s ∈ (ε, ε + 1/√(b²+1))
Carta Y_PARAM (direzione (b, 1), parametro s = y), speculare:
    l(s) = (b s + a, s, a s/2 + d),   s ∈ (ε, ε + 1/√(b²+1))

Gli intervalli sono aperti: i test di appartenenza sono stretti.
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from heisenberg.group import HPoint, mul
from utils.errors import ErrorCode, HeisKakeyaError

SQRT3 = math.sqrt(3.0)


class Chart(Enum):
    """Carta di parametrizzazione di un segmento orizzontale."""
    X_PARAM = "x"
    Y_PARAM = "y"


class SlabSide(Enum):
    """Esito di slab_crossing rispetto ai piani x = c0 ∓ 1/4."""
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"
    NONE = "none"


@dataclass(frozen=True)
class SegmentCode:
    """Quadrupla (a, b, d, ε) di un segmento orizzontale unitario, più la carta."""

    a: float
    b: float
    d: float
    eps: float
    chart: Chart = Chart.X_PARAM

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.a, self.b, self.d, self.eps)):
            raise HeisKakeyaError(ErrorCode.INVALID_CODE, 'hlines.SegmentCode',
                                  f"Non-finite code fields: {(self.a, self.b, self.d, self.eps)}")

    @property
    def interval_length(self) -> float:
        return 1.0 / math.sqrt(self.b * self.b + 1.0)

    @property
    def interval(self) -> Tuple[float, float]:
        """Intervallo aperto del parametro s."""
        return self.eps, self.eps + self.interval_length

    def to_dict(self) -> dict:
        return {'a': self.a, 'b': self.b, 'd': self.d, 'eps': self.eps, 'chart': self.chart.value}

    @classmethod
    def from_dict(cls, data: dict) -> 'SegmentCode':
        try:
            return cls(float(data['a']), float(data['b']), float(data['d']), float(data['eps']),
                       Chart(data.get('chart', 'x')))
        except (KeyError, TypeError, ValueError) as e:
            raise HeisKakeyaError(ErrorCode.INVALID_CODE, 'hlines.SegmentCode', f"Malformed code {data!r}: {e}")


def _require_x_chart(code: SegmentCode, operation: str):
    if code.chart is not Chart.X_PARAM:
        raise HeisKakeyaError(ErrorCode.INVALID_CODE, operation, "Operation requires an X_PARAM code")


# ============================================================
# PARAMETRIZZAZIONI
# ============================================================

def line_point(code: SegmentCode, s: float) -> HPoint:
    """
    Punto della retta codificata al parametro s.

    Args:
        code: Codice del segmento
        s: Parametro (x per X_PARAM, y per Y_PARAM)

    Returns:
        HPoint: (s, b s + a, −a s/2 + d) oppure, in carta Y, (b s + a, s, a s/2 + d)
    """
    if code.chart is Chart.X_PARAM:
        return HPoint(s, code.b * s + code.a, -code.a * s / 2.0 + code.d)
    return HPoint(code.b * s + code.a, s, code.a * s / 2.0 + code.d)


def line_points(code: SegmentCode, s: np.ndarray) -> np.ndarray:
    """Versione vettoriale di line_point: array (n, 3)."""
    s = np.asarray(s, dtype=float)
    if code.chart is Chart.X_PARAM:
        return np.stack([s, code.b * s + code.a, -code.a * s / 2.0 + code.d], axis=-1)
    return np.stack([code.b * s + code.a, s, code.a * s / 2.0 + code.d], axis=-1)


def code_from_translation(q: HPoint, b: float, chart: Chart = Chart.X_PARAM) -> SegmentCode:
    """
    Codice del traslato sinistro q·J_b del segmento unitario centrato nell'origine.

    Carta X (direzione (1, b)):  a = q₂ − b q₁,  d = q₃ + a q₁/2,  ε = q₁ − 1/(2√(b²+1))
    Carta Y (direzione (b, 1)):  a = q₁ − b q₂,  d = q₃ − a q₂/2,  ε = q₂ − 1/(2√(b²+1))
    """
    if not math.isfinite(b):
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'hlines.code_from_translation', f"Slope must be finite, got {b}")
    half = 0.5 / math.sqrt(b * b + 1.0)
    if chart is Chart.X_PARAM:
        a = q.y - b * q.x
        return SegmentCode(a, b, q.t + a * q.x / 2.0, q.x - half, Chart.X_PARAM)
    a = q.x - b * q.y
    return SegmentCode(a, b, q.t - a * q.y / 2.0, q.y - half, Chart.Y_PARAM)


def translate_unit_direction(q: HPoint, code: SegmentCode, s: float) -> HPoint:
    """q · I_b(τ) calcolato direttamente con la legge di gruppo, τ = s − q₁ (o s − q₂ in carta Y)."""
    if code.chart is Chart.X_PARAM:
        tau = s - q.x
        return mul(q, HPoint(tau, code.b * tau, 0.0))
    tau = s - q.y
    return mul(q, HPoint(code.b * tau, tau, 0.0))


def segment_endpoints(code: SegmentCode) -> Tuple[HPoint, HPoint]:
    """Estremi (aperti) del segmento; la loro distanza di Korányi è 1."""
    lo, hi = code.interval
    return line_point(code, lo), line_point(code, hi)


def x_projection_interval(code: SegmentCode) -> Tuple[float, float]:
    """Proiezione del segmento sull'asse x: (ε, ε + 1/√(b²+1)). Lunghezza > ½ sse |b| < √3."""
    _require_x_chart(code, 'hlines.x_projection_interval')
    return code.interval


def direction_angle(code: SegmentCode) -> float:
    """Angolo (non orientato, in [0, π)) della direzione xy del segmento."""
    if code.chart is Chart.X_PARAM:
        angle = math.atan2(code.b, 1.0)
    else:
        angle = math.atan2(1.0, code.b)
    return angle % math.pi


# ============================================================
# ORIZZONTALITÀ
# ============================================================

def horizontality_residuals(samples: Sequence[Tuple[float, HPoint]]) -> np.ndarray:
    """
    Residui |γ₃′ − ½(γ₁γ₂′ − γ₂γ₁′)| ai campioni interni, con differenze centrali.

    Raises:
        HeisKakeyaError: meno di 3 campioni o parametri non strettamente crescenti
    """
    if len(samples) < 3:
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'hlines.is_horizontal',
                              f"Need at least 3 samples, got {len(samples)}")
    s = np.array([sample[0] for sample in samples], dtype=float)
    pts = np.array([tuple(sample[1]) for sample in samples], dtype=float)
    if np.any(np.diff(s) <= 0):
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'hlines.is_horizontal',
                              "Sample parameters must be strictly increasing")

    ds = (s[2:] - s[:-2])[:, None]
    deriv = (pts[2:] - pts[:-2]) / ds
    mid = pts[1:-1]
    return np.abs(deriv[:, 2] - 0.5 * (mid[:, 0] * deriv[:, 1] - mid[:, 1] * deriv[:, 0]))


def is_horizontal(samples: Sequence[Tuple[float, HPoint]], tol: float) -> bool:
    """True se la curva campionata soddisfa l'ODE di orizzontalità entro tol ad ogni campione interno."""
    return bool(np.all(horizontality_residuals(samples) <= tol))


# ============================================================
# ATTRAVERSAMENTO DEI PIANI x = c0 ∓ 1/4
# ============================================================

def slab_crossing(code: SegmentCode, c0: float) -> SlabSide:
    """
    Classifica quali dei piani x = c0 − ¼ (LEFT) e x = c0 + ¼ (RIGHT)
    l'intervallo aperto del segmento attraversa.
    """
    _require_x_chart(code, 'hlines.slab_crossing')
    lo, hi = code.interval
    left = lo < c0 - 0.25 < hi
    right = lo < c0 + 0.25 < hi
    if left and right:
        return SlabSide.BOTH
    if left:
        return SlabSide.LEFT
    if right:
        return SlabSide.RIGHT
    return SlabSide.NONE


# ============================================================
# FAMIGLIE DI CODICI
# ============================================================

@dataclass
class CodeFamily:
    """
    Collezione finita di codici senza duplicati: l'insieme dei segmenti
    orizzontali di un insieme E (sostituto calcolabile di L(E)).
    """

    codes: List[SegmentCode] = field(default_factory=list)
    label: str = "family"

    def __post_init__(self):
        # Rimuove duplicati esatti mantenendo l'ordine
        self.codes = list(dict.fromkeys(self.codes))

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[SegmentCode]:
        return iter(self.codes)

    def subfamily(self, codes: Sequence[SegmentCode], label: str = None) -> 'CodeFamily':
        return CodeFamily(list(codes), label or self.label)

    def to_dict(self) -> dict:
        return {'label': self.label, 'codes': [code.to_dict() for code in self.codes]}

    @classmethod
    def from_dict(cls, data: dict) -> 'CodeFamily':
        if not isinstance(data, dict) or not isinstance(data.get('codes'), list):
            raise HeisKakeyaError(ErrorCode.INVALID_CODE, 'hlines.CodeFamily',
                                  "Family JSON must be an object with a 'codes' list")
        return cls([SegmentCode.from_dict(item) for item in data['codes']], str(data.get('label', 'family')))

    @classmethod
    def load(cls, source: Union[str, Path]) -> 'CodeFamily':
        """
        Carica una famiglia da file JSON oppure da JSON inline.

        Args:
            source: Path del file o stringa JSON
        """
        text = str(source).strip()
        try:
            if text.startswith('{'):
                data = json.loads(text)
            else:
                data = json.loads(Path(text).read_text(encoding='utf-8'))
        except (OSError, json.JSONDecodeError) as e:
            raise HeisKakeyaError(ErrorCode.UNKNOWN_SOURCE, 'hlines.CodeFamily', f"Cannot read family {text!r}: {e}")
        return cls.from_dict(data)
