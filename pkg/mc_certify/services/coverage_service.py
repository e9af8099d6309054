"""
Couverture empirique des intervalles Monte-Carlo sous des lois normales.
"""
import logging
import math

from distributions.models import Gaussian1D, LogConcaveSpec, is_infinite
from distributions.services.gaussian_service import gaussian_gamma
from distributions.utils import run_trials
from ..models import CertifyInput, IntervalKind, McCoverageResult, PhiMap, Variant
from .gaussian_divergence_service import gaussian_divergence
from .interval_service import certify

logger = logging.getLogger(__name__)


def mc_coverage_experiment(
    kind: IntervalKind,
    q: Gaussian1D,
    p: Gaussian1D,
    phi: PhiMap,
    n: int,
    delta: float,
    repeats: int,
    seed: int,
    alpha: float = 2.0,
    variant: Variant = Variant.SOUND,
    workers: int = 1
) -> McCoverageResult:
    """
    Fréquence des répétitions dont l'intervalle certifié contient E_Q[φ].

    Chaque répétition tire n échantillons de P avec la graine seed + indice ;
    la divergence vient des formes closes (quadrature pour pseudo-alpha) et
    la vraie valeur de PhiMap.gaussian_expectation.

    Args:
        kind: Forme de l'intervalle
        q: Loi cible Q
        p: Loi d'échantillonnage P
        phi: Fonction test, de constante de Lipschitz |pente| > 0
        n: Échantillons par répétition
        delta: Niveau de confiance
        repeats: Nombre de répétitions
        seed: Graine de base
        alpha: Ordre de la pseudo α-divergence
        variant: Constantes énoncées ou corrigées
        workers: Nombre de threads

    Returns:
        McCoverageResult: Répétitions couvertes, niveau annoncé, vraie valeur

    Raises:
        BadParameter: Si un paramètre est invalide (φ constante comprise)
        NoConvergence: Si la quadrature échoue
    """
    kind = IntervalKind(kind)
    divergence = gaussian_divergence(kind, q, p, alpha)
    inp = CertifyInput(
        L=phi.lipschitz,
        gamma=gaussian_gamma(p),
        n=n,
        delta=delta,
        div=divergence,
        alpha=alpha if kind == IntervalKind.PSEUDO_ALPHA else None,
    )
    spec = LogConcaveSpec.from_gaussian(p)
    truth = phi.gaussian_expectation(q)

    def trial(index, rng):
        samples = rng.normal(p.mean, p.std, size=n)
        report = certify(samples, phi, spec, kind, inp, variant)
        covered = report.contains(truth)
        if not covered:
            logger.debug(f"Répétition {index} : {truth!r} hors de [{report.low!r}, {report.high!r}]")
        return covered, report

    outcomes = run_trials(trial, repeats, seed, workers)
    reports = [report for _covered, report in outcomes]
    if reports and is_infinite(reports[0].half_width):
        logger.warning(f"Divergence {kind.value} infinie : intervalle vacuitaire")
        mean_half_width = reports[0].half_width
    else:
        mean_half_width = math.fsum(report.half_width for report in reports) / max(len(reports), 1)
    result = McCoverageResult(
        repeats=repeats,
        covered=sum(1 for covered, _report in outcomes if covered),
        level=reports[0].level if reports else 0.0,
        truth=truth,
        mean_half_width=mean_half_width,
    )
    logger.info(
        f"Couverture Monte-Carlo {kind.value} ({Variant(variant).value}) : "
        f"{result.covered}/{result.repeats}, niveau annoncé {result.level!r}"
    )
    return result
