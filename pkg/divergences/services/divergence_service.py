"""
Service de calcul des f-divergences entre distributions discrètes.
"""
import logging
import math
from typing import Sequence

import numpy as np
from scipy.special import rel_entr

from app.exceptions import BadParameter, DomainError
from distributions.models import INFINITE, DiscreteDistribution, DivergenceValue, TestFunction, is_infinite
from distributions.services.distribution_service import radon_nikodym
from ..constants import NEGATIVE_CLAMP_TOLERANCE
from ..models import DivergenceKind, DivergenceTag
from .conjugate_service import conjugate_values
from .generator_service import STRICTLY_POSITIVE_TAGS, generator_values

logger = logging.getLogger(__name__)


def _clamp(value: float) -> DivergenceValue:
    if not math.isfinite(value):
        return INFINITE
    if value < 0:
        if value < -NEGATIVE_CLAMP_TOLERANCE:
            logger.warning(f"Divergence négative {value!r} ramenée à 0")
        return 0.0
    return value


def f_divergence(kind: DivergenceKind, q: DiscreteDistribution, p: DiscreteDistribution) -> DivergenceValue:
    """
    Calcule D_f(Q‖P) = Σ p_i f(q_i/p_i) en sommation compensée.

    Le KL est sommé sous la forme Σ q_i log(q_i/p_i) avec 0·log 0 = 0. La
    variation totale vaut ½ Σ |q_i - p_i| et reste finie sans continuité
    absolue.

    Args:
        kind: Type de divergence
        q: Mesure Q
        p: Mesure de référence P

    Returns:
        DivergenceValue: Valeur ≥ 0, ou INFINITE si Q n'est pas absolument
        continue par rapport à P (ou si f(0) est infini et q_i = 0 < p_i)

    Raises:
        SupportMismatch: Si les supports diffèrent
    """
    q.check_same_support(p)
    if kind.tag == DivergenceTag.TOTAL_VARIATION:
        return _clamp(0.5 * math.fsum(np.abs(q.probs - p.probs)))

    ratio = radon_nikodym(q, p)
    if is_infinite(ratio):
        logger.debug(f"{kind.token} : Q non absolument continue par rapport à P")
        return INFINITE

    if kind.tag == DivergenceTag.KL:
        return _clamp(math.fsum(rel_entr(q.probs, p.probs)))

    charged = p.probs > 0
    ratio = ratio[charged]
    if kind.tag in STRICTLY_POSITIVE_TAGS and np.any(ratio == 0):
        return INFINITE
    terms = p.probs[charged] * generator_values(kind, ratio)
    return _clamp(math.fsum(terms))


def pseudo_alpha_divergence(alpha: float, q: DiscreteDistribution, p: DiscreteDistribution) -> DivergenceValue:
    """
    Calcule D̃_α(Q‖P) = Σ p_i |q_i/p_i - 1|^α.

    Raises:
        BadParameter: Si α ≤ 1
        SupportMismatch: Si les supports diffèrent
    """
    return f_divergence(DivergenceKind.pseudo_alpha(alpha), q, p)


def variational_lower_bound(
    kind: DivergenceKind,
    q: DiscreteDistribution,
    p: DiscreteDistribution,
    phi_grid: Sequence[TestFunction]
) -> float:
    """
    Borne inférieure variationnelle max_φ E_Q[φ] - E_P[f*(φ)].

    Args:
        kind: Type de divergence (avec conjuguée en forme close)
        q: Mesure Q
        p: Mesure de référence P
        phi_grid: Fonctions test dans le domaine de la conjuguée

    Returns:
        float: Meilleure borne de la grille, ≤ D_f(Q‖P)

    Raises:
        DomainError: Si la grille est vide ou sort du domaine de la conjuguée
        UnsupportedOperation: Pour la variation totale
    """
    if not phi_grid:
        raise DomainError("La grille de fonctions test est vide.")
    q.check_same_support(p)
    for phi in phi_grid:
        phi.check_aligned(q)

    grid = np.vstack([phi.values for phi in phi_grid])
    conjugate = conjugate_values(kind, grid)
    # f*(φ) qui déborde ne donne aucune borne utile
    usable = np.all(np.isfinite(conjugate), axis=1)
    if not np.any(usable):
        return -math.inf
    values = grid[usable] @ q.probs - conjugate[usable] @ p.probs
    return float(values.max())


def convexity_probe(alpha: float, x: float, y: float, weight: float) -> float:
    """
    Écart de convexité de t ↦ |t - 1|^α entre x et y.

    Retourne λ|x-1|^α + (1-λ)|y-1|^α - |λx + (1-λ)y - 1|^α.

    Args:
        alpha: Exposant (> 1)
        x: Premier point (≥ 0)
        y: Second point (≥ 0)
        weight: Poids λ dans [0, 1]

    Returns:
        float: Écart, positif à l'arrondi près

    Raises:
        BadParameter: Si un argument sort de son domaine
    """
    if not alpha > 1:
        raise BadParameter(f"alpha={alpha!r} doit être > 1.")
    if not (x >= 0 and y >= 0):
        raise BadParameter(f"Points ({x!r}, {y!r}) hors de [0, +∞[.")
    if not 0 <= weight <= 1:
        raise BadParameter(f"Poids {weight!r} hors de [0, 1].")
    mixed = weight * x + (1 - weight) * y
    return math.fsum([
        weight * abs(x - 1) ** alpha,
        (1 - weight) * abs(y - 1) ** alpha,
        -abs(mixed - 1) ** alpha,
    ])
