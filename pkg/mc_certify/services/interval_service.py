"""
Service de calcul des intervalles Monte-Carlo non asymptotiques.
"""
import logging
import math
from typing import Callable

import numpy as np
from scipy.special import gammaln

from app.exceptions import BadParameter, LipschitzViolation
from distributions.models import INFINITE, DivergenceValue, LogConcaveSpec, is_infinite
from ..constants import LIPSCHITZ_TOLERANCE
from ..models import CertifyInput, IntervalKind, IntervalReport, IntervalTerms, Variant

logger = logging.getLogger(__name__)


def deviation_term(inp: CertifyInput, variant: Variant = Variant.PRINTED) -> float:
    """
    Terme de déviation 4L²log(2/δ)/(nγ), ou sa racine carrée pour SOUND.
    """
    value = 4.0 * inp.L ** 2 * math.log(2.0 / inp.delta) / (inp.n * inp.gamma)
    if Variant(variant) == Variant.SOUND:
        return math.sqrt(value)
    return value


def moment_gamma_factor(alpha: float) -> float:
    """
    Γ((3α - 2)/(2(α - 1)))^{(α-1)/α}, évalué par log Γ.

    Vaut 1 à α = 2 (Γ(2) = 1).
    """
    if not alpha > 1:
        raise BadParameter(f"alpha={alpha!r} doit être > 1.")
    argument = (3.0 * alpha - 2.0) / (2.0 * (alpha - 1.0))
    return math.exp(float(gammaln(argument)) * (alpha - 1.0) / alpha)


def _bias_or_vacuous(inp: CertifyInput, compute: Callable[[float], float]) -> DivergenceValue:
    if is_infinite(inp.div):
        logger.debug("Divergence infinie : intervalle vacuitaire")
        return INFINITE
    return compute(float(inp.div))


def half_width_pseudo_alpha(inp: CertifyInput, variant: Variant = Variant.PRINTED) -> IntervalTerms:
    """
    Demi-largeur fondée sur la pseudo α-divergence D̃_α(Q‖P).

    K = 2^{(2α-1)/α}·L·div^{1/α}/√γ · Γ((3α-2)/(2(α-1)))^{(α-1)/α},
    niveau 1 - δ. Les deux variantes partagent K.

    Raises:
        BadParameter: Si α n'est pas renseigné
    """
    alpha = inp.alpha
    if alpha is None:
        raise BadParameter("alpha est requis pour la forme pseudo-alpha.")

    def bias(div: float) -> float:
        return (
            2.0 ** ((2.0 * alpha - 1.0) / alpha)
            * inp.L
            * div ** (1.0 / alpha)
            / math.sqrt(inp.gamma)
            * moment_gamma_factor(alpha)
        )

    return IntervalTerms(
        deviation_term=deviation_term(inp, variant),
        bias_term=_bias_or_vacuous(inp, bias),
        level=1.0 - inp.delta,
    )


def chi2_small_sample(inp: CertifyInput) -> bool:
    """Indique si log(2/δ) > n (branche petit n de la forme χ²)."""
    return math.log(2.0 / inp.delta) > inp.n


def half_width_chi2(
    inp: CertifyInput,
    empirical_second_moment: float,
    variant: Variant = Variant.PRINTED
) -> IntervalTerms:
    """
    Demi-largeur fondée sur χ²(Q‖P) et le moment d'ordre 2 empirique de φ.

    K = √(χ²·(m₂ + 16L²/γ·√(log(2/δ)/n))) si log(2/δ) ≤ n,
    √(χ²·(m₂ + 16L²log(2/δ)/(nγ))) sinon ; niveau (1 - δ)².

    Raises:
        BadParameter: Si le moment d'ordre 2 est négatif
    """
    if not (math.isfinite(empirical_second_moment) and empirical_second_moment >= 0):
        raise BadParameter(f"Moment d'ordre 2 invalide : {empirical_second_moment!r}")
    log_term = math.log(2.0 / inp.delta)
    if chi2_small_sample(inp):
        concentration = 16.0 * inp.L ** 2 * log_term / (inp.n * inp.gamma)
    else:
        concentration = 16.0 * inp.L ** 2 / inp.gamma * math.sqrt(log_term / inp.n)

    def bias(div: float) -> float:
        return math.sqrt(div * (empirical_second_moment + concentration))

    return IntervalTerms(
        deviation_term=deviation_term(inp, variant),
        bias_term=_bias_or_vacuous(inp, bias),
        level=(1.0 - inp.delta) ** 2,
    )


def half_width_kl(inp: CertifyInput, variant: Variant = Variant.PRINTED) -> IntervalTerms:
    """
    Demi-largeur fondée sur KL(Q‖P).

    K = KL + L²/(nγ) pour PRINTED, KL + L²/γ pour SOUND ; niveau 1 - δ.
    """
    variant = Variant(variant)

    def bias(div: float) -> float:
        if variant == Variant.SOUND:
            return div + inp.L ** 2 / inp.gamma
        return div + inp.L ** 2 / (inp.n * inp.gamma)

    return IntervalTerms(
        deviation_term=deviation_term(inp, variant),
        bias_term=_bias_or_vacuous(inp, bias),
        level=1.0 - inp.delta,
    )


def check_lipschitz(samples: np.ndarray, values: np.ndarray, lipschitz: float) -> None:
    """
    Contrôle |φ(x_i) - φ(x_{i+1})| ≤ L·|x_i - x_{i+1}| sur les paires consécutives.

    Raises:
        LipschitzViolation: Au premier témoin de violation
    """
    if samples.size < 2:
        return
    rises = np.abs(np.diff(values))
    runs = np.abs(np.diff(samples))
    allowed = lipschitz * runs * (1.0 + LIPSCHITZ_TOLERANCE) + LIPSCHITZ_TOLERANCE
    broken = np.flatnonzero(rises > allowed)
    if broken.size:
        index = int(broken[0])
        logger.warning(
            f"Constante de Lipschitz {lipschitz!r} contredite entre x={samples[index]!r} "
            f"et x={samples[index + 1]!r}"
        )
        raise LipschitzViolation(
            f"|φ(x) - φ(y)| = {rises[index]!r} > L·|x - y| = {lipschitz * runs[index]!r}"
        )


def certify(
    samples: np.ndarray,
    phi: Callable[[np.ndarray], np.ndarray],
    spec: LogConcaveSpec,
    kind: IntervalKind,
    inp: CertifyInput,
    variant: Variant = Variant.SOUND
) -> IntervalReport:
    """
    Intervalle certifié pour E_Q[φ] à partir d'échantillons de P.

    Args:
        samples: Échantillons i.i.d. de la loi P décrite par spec
        phi: Fonction test vectorisée, L-lipschitzienne
        spec: Loi P fortement log-concave
        kind: Forme de l'intervalle
        inp: Paramètres ; inp.n doit valoir le nombre d'échantillons
        variant: Constantes énoncées ou corrigées

    Returns:
        IntervalReport: Estimation (moyenne empirique de φ) et demi-largeur

    Raises:
        BadParameter: Si l'échantillon est vide, si n ne correspond pas ou si
        γ dépasse celui de la loi
        LipschitzViolation: Si une paire d'échantillons contredit L
    """
    samples = np.asarray(samples, dtype=float).reshape(-1)
    if samples.size == 0:
        raise BadParameter("Aucun échantillon.")
    if samples.size != inp.n:
        raise BadParameter(f"n={inp.n} pour {samples.size} échantillons.")
    if inp.gamma > spec.gamma:
        raise BadParameter(f"gamma={inp.gamma!r} dépasse celui de la loi ({spec.gamma!r}).")

    values = np.asarray(phi(samples), dtype=float)
    check_lipschitz(samples, values, inp.L)
    estimate = math.fsum(values) / values.size

    kind = IntervalKind(kind)
    if kind == IntervalKind.PSEUDO_ALPHA:
        terms = half_width_pseudo_alpha(inp, variant)
    elif kind == IntervalKind.CHI2:
        terms = half_width_chi2(inp, math.fsum(values ** 2) / values.size, variant)
    else:
        terms = half_width_kl(inp, variant)
    return IntervalReport.from_terms(estimate, terms)
