"""
Simulation d'un prédicteur de Gibbs et mesure empirique de la couverture des bornes.
"""
import logging
import math
from typing import Tuple

import numpy as np

from distributions.models import DiscreteDistribution, is_infinite
from distributions.services.distribution_service import make_discrete
from distributions.utils import derive_seed, rng_for, run_trials
from divergences.models import DivergenceKind
from divergences.services.divergence_service import f_divergence
from ..models import AddendForm, CoverageResult, GibbsExperiment, LossClass, PacInput
from .bound_service import addend

logger = logging.getLogger(__name__)


def tempered_posterior(
    prior: DiscreteDistribution,
    empirical_risks: np.ndarray,
    temperature: float,
    m: int
) -> DiscreteDistribution:
    """
    Loi a posteriori Q_h ∝ P_h·exp(-λ·m·R̂_h).

    À λ = 0, Q = P.
    """
    exponent = -temperature * m * (empirical_risks - empirical_risks.min())
    weights = prior.probs * np.exp(exponent)
    return make_discrete(weights / weights.sum(), prior.labels)


def _simulate(experiment: GibbsExperiment, rng: np.random.Generator) -> Tuple[float, float, DiscreteDistribution]:
    model = experiment.data_model
    noise = model.centered_noise(rng, experiment.m)
    empirical = model.means + noise.mean(axis=1)
    if experiment.tempered:
        posterior = tempered_posterior(experiment.prior, empirical, experiment.temperature, experiment.m)
    else:
        posterior = experiment.posterior
    empirical_risk = math.fsum(posterior.probs * empirical)
    true_risk = math.fsum(posterior.probs * model.means)
    return empirical_risk, true_risk, posterior


def gibbs_risks(experiment: GibbsExperiment, trial: int) -> Tuple[float, float]:
    """
    Risques empirique et réel du prédicteur de Gibbs pour un essai.

    R_D(G_Q) = Σ Q_h μ_h est exact ; R_S(G_Q) pondère par Q la perte moyenne
    de chaque hypothèse sur m tirages de graine seed + trial.

    Args:
        experiment: Expérience
        trial: Indice de l'essai

    Returns:
        Tuple: (R_S, R_D)
    """
    empirical_risk, true_risk, _posterior = _simulate(
        experiment, rng_for(derive_seed(experiment.seed, trial))
    )
    return empirical_risk, true_risk


def coverage_experiment(
    experiment: GibbsExperiment,
    loss: LossClass,
    form: AddendForm,
    delta: float,
    alpha: float,
    workers: int = 1
) -> CoverageResult:
    """
    Mesure la fréquence des essais où R_D(G_Q) > R_S(G_Q) + terme.

    Le terme utilise D_α(Q‖P) ; avec la loi tempérée, Q et donc le terme
    sont recalculés à chaque essai.

    Args:
        experiment: Expérience de Gibbs
        loss: Classe de perte déclarée, certifiée par le modèle de données
        form: Forme multiplicative ou additive
        delta: Niveau de confiance
        alpha: Ordre de la divergence
        workers: Nombre de threads

    Returns:
        CoverageResult: Violations, taux et indicateur de borne vacuitaire

    Raises:
        ModelMismatch: Si le modèle ne certifie pas la classe de perte
        BadParameter: Si δ, α ou m sont invalides
    """
    experiment.data_model.certify(loss)
    form = AddendForm(form)
    PacInput(experiment.m, delta, alpha, 0.0)
    kind = DivergenceKind.alpha(alpha)

    fixed_addend = None
    if not experiment.tempered:
        divergence = f_divergence(kind, experiment.posterior, experiment.prior)
        if is_infinite(divergence):
            logger.warning("Divergence infinie : borne vacuitaire, aucune violation possible")
            return CoverageResult(trials=experiment.trials, violations=0, vacuous=True)
        fixed_addend = addend(loss, PacInput(experiment.m, delta, alpha, divergence), form)

    def trial(index, rng):
        empirical_risk, true_risk, posterior = _simulate(experiment, rng)
        term = fixed_addend
        if term is None:
            divergence = f_divergence(kind, posterior, experiment.prior)
            term = addend(loss, PacInput(experiment.m, delta, alpha, divergence), form)
        violated = true_risk > empirical_risk + term
        if violated:
            logger.debug(f"Essai {index} : R_D={true_risk!r} > R_S={empirical_risk!r} + {term!r}")
        return violated, term

    outcomes = run_trials(trial, experiment.trials, experiment.seed, workers)
    result = CoverageResult(
        trials=experiment.trials,
        violations=sum(1 for violated, _term in outcomes if violated),
        vacuous=False,
        addends=tuple(term for _violated, term in outcomes),
    )
    logger.info(
        f"Couverture {loss.token} ({form.value}) : {result.violations}/{result.trials} violations"
    )
    return result
