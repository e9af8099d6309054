"""
Générateurs f des f-divergences.
"""
import math

import numpy as np
from scipy.special import xlogy

from app.exceptions import DomainError
from distributions.models import REALS, Interval
from ..models import DivergenceKind, DivergenceTag

# f(t) n'est défini que pour t > 0
STRICTLY_POSITIVE_TAGS = frozenset({DivergenceTag.REVERSE_KL, DivergenceTag.NEYMAN_CHI2})

# f se prolonge naturellement à toute la droite réelle
REAL_LINE_TAGS = frozenset({DivergenceTag.PEARSON_CHI2, DivergenceTag.PSEUDO_ALPHA})


def generator_values(kind: DivergenceKind, t: np.ndarray) -> np.ndarray:
    """
    Évalue f(t) sur un tableau, sans contrôle de domaine.

    Args:
        kind: Type de divergence
        t: Points d'évaluation

    Returns:
        np.ndarray: Valeurs de f
    """
    tag = kind.tag
    t = np.asarray(t, dtype=float)
    if tag == DivergenceTag.KL:
        return xlogy(t, t) - t + 1.0
    if tag == DivergenceTag.REVERSE_KL:
        return -np.log(t)
    if tag == DivergenceTag.PEARSON_CHI2:
        return (t - 1.0) ** 2
    if tag == DivergenceTag.NEYMAN_CHI2:
        return (1.0 - t) ** 2 / t
    if tag == DivergenceTag.TOTAL_VARIATION:
        return 0.5 * np.abs(t - 1.0)
    if tag == DivergenceTag.SQUARED_HELLINGER:
        return (np.sqrt(t) - 1.0) ** 2
    if tag == DivergenceTag.ALPHA:
        alpha = kind.param
        return (t ** alpha - 1.0) / (alpha * (alpha - 1.0))
    if tag == DivergenceTag.PSEUDO_ALPHA:
        return np.abs(t - 1.0) ** kind.param
    # PHI_P
    return t ** kind.param - 1.0


def generator_domain(kind: DivergenceKind) -> Interval:
    """
    Domaine du générateur apparié à la conjuguée (voir conjugate_generator).

    Returns:
        Interval: ℝ pour Pearson et pseudo-α, ]0, +∞[ pour reverse KL et
        Neyman, [0, +∞[ sinon
    """
    if kind.tag in REAL_LINE_TAGS:
        return REALS
    if kind.tag in STRICTLY_POSITIVE_TAGS:
        return Interval(low=0.0)
    return Interval(low=0.0, low_closed=True)


def generator_f(kind: DivergenceKind, t: float) -> float:
    """
    Évalue le générateur f(t) d'une f-divergence.

    Args:
        kind: Type de divergence
        t: Point d'évaluation (t ≥ 0, t > 0 pour reverse KL et Neyman)

    Returns:
        float: f(t), avec f(1) = 0

    Raises:
        DomainError: Si t est hors du domaine du générateur
    """
    if not math.isfinite(t) or t < 0 or (t == 0 and kind.tag in STRICTLY_POSITIVE_TAGS):
        raise DomainError(f"t={t!r} hors du domaine du générateur {kind.token}.")
    return float(generator_values(kind, np.float64(t)))


def conjugate_generator(kind: DivergenceKind, t: float) -> float:
    """
    Évalue le générateur dont conjugate_fstar donne la conjuguée.

    Identique à generator_f, sauf pour le KL inverse (forme décalée
    -log t + t - 1, même divergence entre probabilités) et pour Pearson et
    pseudo-α, prolongés aux t négatifs.

    Raises:
        DomainError: Si t est hors de generator_domain(kind)
    """
    if not generator_domain(kind).contains(t):
        raise DomainError(f"t={t!r} hors du domaine de {kind.token}.")
    value = float(generator_values(kind, np.float64(t)))
    if kind.tag == DivergenceTag.REVERSE_KL:
        value += t - 1.0
    return value
