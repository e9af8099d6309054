"""
Service de calcul pour l'application distributions.
"""
import logging
import math
from typing import Optional, Sequence, Union

import numpy as np

from app.exceptions import DomainError, EmptySupport, MassTooFar, NegativeMass
from ..constants import NEGATIVE_CLAMP_TOLERANCE, RENORMALIZATION_TOLERANCE
from ..models import INFINITE, DiscreteDistribution, Infinite, TestFunction

logger = logging.getLogger(__name__)


def make_discrete(
    probs: Sequence[float],
    labels: Optional[Sequence[str]] = None
) -> DiscreteDistribution:
    """
    Construit une distribution discrète à partir de poids presque normalisés.

    Les entrées dans [-1e-12, 0[ sont ramenées à 0, puis les poids sont
    renormalisés si leur somme est à moins de 1e-6 de 1.

    Args:
        probs: Poids de probabilité
        labels: Étiquettes des points (indices par défaut)

    Returns:
        DiscreteDistribution: Distribution renormalisée

    Raises:
        EmptySupport: Si la liste est vide
        NegativeMass: Si une entrée est inférieure à -1e-12
        MassTooFar: Si la somme est hors de [1 - 1e-6, 1 + 1e-6]
    """
    weights = np.array(probs, dtype=float).reshape(-1)
    if weights.size == 0:
        raise EmptySupport("Impossible de construire une distribution sans point.")
    if not np.all(np.isfinite(weights)):
        raise DomainError("Les poids doivent être finis.")
    if np.any(weights < -NEGATIVE_CLAMP_TOLERANCE):
        raise NegativeMass(f"Poids négatif : {float(weights.min())!r}")
    weights = np.clip(weights, 0.0, None)

    total = math.fsum(weights)
    if abs(total - 1.0) > RENORMALIZATION_TOLERANCE:
        raise MassTooFar(f"Somme des poids {total!r} trop éloignée de 1.")

    return DiscreteDistribution(
        probs=weights / total,
        labels=tuple(labels) if labels is not None else (),
    )


def expectation(distribution: DiscreteDistribution, phi: TestFunction) -> float:
    """
    Calcule E_P[φ] = Σ p_i φ_i en sommation compensée.

    Raises:
        LengthMismatch: Si φ n'est pas aligné sur le support
    """
    phi.check_aligned(distribution)
    return math.fsum(distribution.probs * phi.values)


def variance(distribution: DiscreteDistribution, phi: TestFunction) -> float:
    """
    Calcule Var_P[φ] = E_P[φ²] - (E_P[φ])², ramenée à 0 si négative.

    Le calcul se fait sur les valeurs centrées, ce qui rend le résultat
    invariant par translation de φ.

    Raises:
        LengthMismatch: Si φ n'est pas aligné sur le support
    """
    mean = expectation(distribution, phi)
    centered = phi.values - mean
    return max(math.fsum(distribution.probs * centered * centered), 0.0)


def radon_nikodym(
    q: DiscreteDistribution,
    p: DiscreteDistribution
) -> Union[np.ndarray, Infinite]:
    """
    Calcule la densité dQ/dP point par point.

    Les points où q_i = p_i = 0 reçoivent le rapport 1.

    Args:
        q: Mesure Q
        p: Mesure de référence P

    Returns:
        np.ndarray | Infinite: Rapports q_i/p_i, ou INFINITE si Q n'est pas
        absolument continue par rapport à P

    Raises:
        SupportMismatch: Si les supports diffèrent
    """
    q.check_same_support(p)
    if np.any((q.probs > 0) & (p.probs == 0)):
        return INFINITE

    ratio = np.ones(p.size)
    positive = p.probs > 0
    ratio[positive] = q.probs[positive] / p.probs[positive]
    return ratio
