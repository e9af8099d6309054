"""
Balayages de vérification des inégalités sur des triplets (Q, P, φ) aléatoires.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from app.exceptions import BadParameter, PhiDomainError
from distributions.constants import DEFAULT_MAX_SUPPORT, DEFAULT_MIN_SUPPORT
from distributions.models import DiscreteDistribution, Interval, TestFunction
from distributions.services.distribution_service import make_discrete
from distributions.utils import random_probs, run_trials
from divergences.utils import sampling_range
from ..constants import PHI_HALF_WIDTH, ZERO_FRACTION
from ..models import InequalityId, SweepResult
from .bound_service import phi_domain, verify

logger = logging.getLogger(__name__)


def phi_sampling_range(
    inequality: InequalityId,
    phi_low: Optional[float] = None,
    phi_high: Optional[float] = None
) -> Tuple[float, float]:
    """
    Intervalle fermé de tirage de φ, éventuellement imposé.

    Args:
        inequality: Inégalité vérifiée
        phi_low: Borne basse imposée
        phi_high: Borne haute imposée

    Returns:
        Tuple: (borne basse, borne haute)

    Raises:
        BadParameter: Si phi_low > phi_high
        PhiDomainError: Si l'intervalle imposé sort de phi_domain(inequality)
    """
    domain = phi_domain(inequality)
    low, high = sampling_range(domain, PHI_HALF_WIDTH)
    low = low if phi_low is None else float(phi_low)
    high = high if phi_high is None else float(phi_high)
    if low > high:
        raise BadParameter(f"Intervalle de φ vide : [{low!r}, {high!r}]")
    requested = Interval(low=low, high=high, low_closed=True, high_closed=True)
    if not requested.is_within(domain):
        raise PhiDomainError(f"L'intervalle {requested} sort de {domain} pour {inequality.token}.")
    return low, high


def random_triple(
    rng: np.random.Generator,
    phi_range: Tuple[float, float],
    min_support: int = DEFAULT_MIN_SUPPORT,
    max_support: int = DEFAULT_MAX_SUPPORT
) -> Tuple[DiscreteDistribution, DiscreteDistribution, TestFunction]:
    """
    Tire un triplet (Q, P, φ) avec Q absolument continue par rapport à P.

    P et Q peuvent avoir des points de masse nulle ; Q s'annule partout où P
    s'annule.
    """
    if not 1 <= min_support <= max_support:
        raise BadParameter(f"Tailles de support invalides : [{min_support}, {max_support}]")
    size = int(rng.integers(min_support, max_support + 1))
    p_weights = random_probs(rng, size, zero_fraction=ZERO_FRACTION)
    q_weights = np.where(p_weights > 0, random_probs(rng, size, zero_fraction=ZERO_FRACTION), 0.0)
    total = q_weights.sum()
    q_weights = q_weights / total if total > 0 else p_weights
    phi = TestFunction(rng.uniform(phi_range[0], phi_range[1], size))
    return make_discrete(q_weights), make_discrete(p_weights), phi


def verification_sweep(
    inequality: InequalityId,
    trials: int,
    seed: int,
    workers: int = 1,
    phi_low: Optional[float] = None,
    phi_high: Optional[float] = None,
    min_support: int = DEFAULT_MIN_SUPPORT,
    max_support: int = DEFAULT_MAX_SUPPORT
) -> SweepResult:
    """
    Vérifie une inégalité sur `trials` triplets aléatoires.

    L'essai i utilise la graine seed + i ; le résultat ne dépend pas du
    nombre de threads.

    Returns:
        SweepResult: Rapports dans l'ordre des essais

    Raises:
        PhiDomainError: Si l'intervalle de φ imposé sort du domaine
        BadParameter: Si un paramètre numérique est invalide
    """
    phi_range = phi_sampling_range(inequality, phi_low, phi_high)

    def trial(index, rng):
        q, p, phi = random_triple(rng, phi_range, min_support, max_support)
        report = verify(inequality, q, p, phi)
        if not report.holds:
            logger.debug(f"{inequality.token} : essai {index} en défaut (marge {report.slack!r})")
        return report

    result = SweepResult(
        inequality=inequality,
        seed=seed,
        reports=tuple(run_trials(trial, trials, seed, workers)),
    )
    if result.vacuous:
        logger.warning(f"{inequality.token} : {result.vacuous} bornes vacuitaires sur {result.trials}")
    logger.info(
        f"Balayage {inequality.token} terminé : {result.trials} essais, "
        f"{result.violations} violations"
    )
    return result
