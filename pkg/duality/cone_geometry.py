"""
Geometria della dualità: fette E_c, traslazione nel piano {yot}, mappa
delle altezze φ, proiezioni scalari, curva γ(θ), angolo θ(c), rotazione R
e coni C1 = {x² = −2yz}, C2 = {x² + y² = z²}.

Tutte le funzioni accettano sia un singolo vettore (3,) sia array (n, 3)
(e c scalare o array (n,)).
"""

import numpy as np

from config import IDENTITY_TOLERANCE
from heisenberg.group import mul_arrays
from utils.errors import ErrorCode, HeisKakeyaError

_HALF_SQRT2 = np.sqrt(2.0) / 2.0


# ============================================================
# FETTE E ALTEZZE
# ============================================================

def slice_points(B: np.ndarray, c: float) -> np.ndarray:
    """(a, b, d) ↦ (c, bc + a, −ac/2 + d): punto del segmento codificato sul piano {x = c}."""
    B = np.asarray(B, dtype=float).reshape(-1, 3)
    a, b, d = B[:, 0], B[:, 1], B[:, 2]
    return np.stack([np.full(len(B), float(c)), b * c + a, -a * c / 2.0 + d], axis=1)


def translate_to_yot(points: np.ndarray, c: float) -> np.ndarray:
    """
    Moltiplica a sinistra per (−c, 0, 0): porta il piano {x = c} nel piano {x = 0}.

    Raises:
        HeisKakeyaError: punti con |x − c| > 1e-12
    """
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if np.any(np.abs(points[:, 0] - c) > IDENTITY_TOLERANCE):
        raise HeisKakeyaError(ErrorCode.NOT_ON_PLANE, 'duality.translate_to_yot', f"Points must lie on x = {c}")
    shift = np.zeros_like(points)
    shift[:, 0] = -c
    return mul_arrays(shift, points)


def phi_heights(points: np.ndarray) -> np.ndarray:
    """
    Altezze t dei punti del piano {x = 0}.

    Raises:
        HeisKakeyaError: punti con |x| > 1e-12
    """
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if np.any(np.abs(points[:, 0]) > IDENTITY_TOLERANCE):
        raise HeisKakeyaError(ErrorCode.NOT_ON_PLANE, 'duality.phi_heights', "Points must lie on x = 0")
    return points[:, 2].copy()


def dual_direction(c):
    """Direzione (−c, −c²/2, 1); la sua norma è 1 + c²/2."""
    c = np.asarray(c, dtype=float)
    return np.stack([-c, -c * c / 2.0, np.ones_like(c)], axis=-1)


def unit_dual_direction(c):
    """2/(2 + c²)·(−c, −c²/2, 1): arco della sfera unitaria dentro il cono C1."""
    c = np.asarray(c, dtype=float)
    return dual_direction(c) * (2.0 / (2.0 + c * c))[..., None]


def dual_height(v: np.ndarray, c):
    """⟨(−c, −c²/2, 1), (a, b, d)⟩ = (1 + c²/2)·ρ della proiezione sulla direzione normalizzata."""
    return np.sum(np.asarray(v, dtype=float) * dual_direction(c), axis=-1)


# ============================================================
# PROIEZIONI E ROTAZIONE
# ============================================================

def scalar_proj(u: np.ndarray, w: np.ndarray):
    """
    Coordinata con segno di w lungo la direzione unitaria u.

    Raises:
        HeisKakeyaError: ‖u‖ ≠ 1 oltre 1e-12
    """
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(np.linalg.norm(u, axis=-1) - 1.0) > IDENTITY_TOLERANCE):
        raise HeisKakeyaError(ErrorCode.INVALID_PARAMETER, 'duality.scalar_proj', "Direction must be a unit vector")
    return np.sum(u * np.asarray(w, dtype=float), axis=-1)


def gamma_theta(theta):
    """(cos θ, sin θ, 1)/√2."""
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta), np.ones_like(theta)], axis=-1) / np.sqrt(2.0)


def theta_of_c(c):
    """Angolo in [0, 2π) con cos θ = −2√2c/(2+c²) e sin θ = (2−c²)/(2+c²)."""
    c = np.asarray(c, dtype=float)
    den = 2.0 + c * c
    theta = np.arctan2((2.0 - c * c) / den, -2.0 * np.sqrt(2.0) * c / den) % (2.0 * np.pi)
    return float(theta) if theta.ndim == 0 else theta


def rotation_R(p: np.ndarray) -> np.ndarray:
    """(x, y, z) ↦ (x, √2/2 (y + z), √2/2 (z − y)); porta C1 in C2."""
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    return np.stack([x, _HALF_SQRT2 * (y + z), _HALF_SQRT2 * (z - y)], axis=-1)


def cone_c1_residual(p: np.ndarray):
    """x² + 2yz (nullo su C1)."""
    p = np.asarray(p, dtype=float)
    return p[..., 0] ** 2 + 2.0 * p[..., 1] * p[..., 2]


def cone_c2_residual(p: np.ndarray):
    """x² + y² − z² (nullo su C2)."""
    p = np.asarray(p, dtype=float)
    return p[..., 0] ** 2 + p[..., 1] ** 2 - p[..., 2] ** 2


def verify_projection_identity(c, w: np.ndarray):
    """
    |ρ_{u₁}(w) − ρ_{γ(θ(c))}(R w)| con u₁ = (−c, −c²/2, 1)/(1 + c²/2).
    R porta u₁ in γ(θ(c)) e conserva il prodotto scalare: il residuo è nullo.
    """
    left = scalar_proj(unit_dual_direction(c), w)
    right = scalar_proj(gamma_theta(theta_of_c(c)), rotation_R(w))
    residual = np.abs(left - right)
    return float(residual) if np.ndim(residual) == 0 else residual
