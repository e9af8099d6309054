"""
Service de calcul des membres de droite des inégalités de changement de mesure.
"""
import logging
import math

import numpy as np
from scipy.special import logsumexp

from app.exceptions import BadParameter, PhiDomainError
from distributions.models import (
    INFINITE,
    REALS,
    DiscreteDistribution,
    DivergenceValue,
    Interval,
    TestFunction,
    is_infinite,
)
from distributions.services.distribution_service import expectation, variance
from divergences.models import DivergenceKind, DivergenceTag
from divergences.services.conjugate_service import BELOW_ONE, NON_NEGATIVE, conjugate_values
from divergences.services.divergence_service import f_divergence, pseudo_alpha_divergence
from ..models import BoundReport, InequalityId, InequalityTag, OptimalDensity

logger = logging.getLogger(__name__)

UNIT_INTERVAL = Interval(low=0.0, high=1.0, low_closed=True, high_closed=True)

# Bornes de la forme D_f(Q‖P) + E_P[f*(φ)]
CONJUGATE_BOUNDS = {
    InequalityTag.KL_UNCONSTRAINED: DivergenceTag.KL,
    InequalityTag.PEARSON_CHI2_UNCONSTRAINED: DivergenceTag.PEARSON_CHI2,
    InequalityTag.ALPHA_UNCONSTRAINED: DivergenceTag.ALPHA,
    InequalityTag.HELLINGER2_UNCONSTRAINED: DivergenceTag.SQUARED_HELLINGER,
    InequalityTag.REVERSE_KL_UNCONSTRAINED: DivergenceTag.REVERSE_KL,
    InequalityTag.NEYMAN_CHI2_UNCONSTRAINED: DivergenceTag.NEYMAN_CHI2,
}

PEARSON = DivergenceKind(DivergenceTag.PEARSON_CHI2)


def phi_domain(inequality: InequalityId) -> Interval:
    """
    Intervalle des valeurs admises pour φ.

    [0, 1] pour la variation totale, ]-∞, 1[ pour Hellinger, KL inverse et
    Neyman, [0, +∞[ pour l'α-divergence non contrainte, ℝ sinon.
    """
    tag = inequality.tag
    if tag == InequalityTag.TV_CONSTRAINED:
        return UNIT_INTERVAL
    if tag in (
        InequalityTag.HELLINGER2_UNCONSTRAINED,
        InequalityTag.REVERSE_KL_UNCONSTRAINED,
        InequalityTag.NEYMAN_CHI2_UNCONSTRAINED,
    ):
        return BELOW_ONE
    if tag == InequalityTag.ALPHA_UNCONSTRAINED:
        return NON_NEGATIVE
    return REALS


def _check_inputs(inequality: InequalityId, q: DiscreteDistribution, p: DiscreteDistribution, phi: TestFunction):
    q.check_same_support(p)
    phi.check_aligned(p)
    domain = phi_domain(inequality)
    if not domain.contains(phi.values):
        raise PhiDomainError(f"φ sort de {domain} pour {inequality.token}.")


def _finite_or_infinite(value: float) -> DivergenceValue:
    return value if math.isfinite(value) else INFINITE


def _vacuous(inequality: InequalityId) -> DivergenceValue:
    logger.debug(f"Borne vacuitaire pour {inequality.token} : divergence infinie")
    return INFINITE


def _divergence_kind(inequality: InequalityId, tag: DivergenceTag) -> DivergenceKind:
    if tag == DivergenceTag.ALPHA:
        return DivergenceKind.alpha(inequality.alpha)
    return DivergenceKind(tag)


def upper_bound(
    inequality: InequalityId,
    q: DiscreteDistribution,
    p: DiscreteDistribution,
    phi: TestFunction
) -> DivergenceValue:
    """
    Évalue le membre de droite de l'inégalité majorant E_Q[φ].

    Pour les inégalités HCR, la valeur majore |E_Q[φ] - E_P[φ]|.

    Args:
        inequality: Inégalité à évaluer
        q: Mesure Q
        p: Mesure de référence P
        phi: Fonction test dans phi_domain(inequality)

    Returns:
        DivergenceValue: Membre de droite, INFINITE si la divergence est infinie

    Raises:
        PhiDomainError: Si φ sort du domaine admis
        SupportMismatch: Si les supports diffèrent
        LengthMismatch: Si φ n'est pas aligné sur le support
    """
    _check_inputs(inequality, q, p, phi)
    tag = inequality.tag

    if tag == InequalityTag.HCR_GENERALIZED:
        return hcr_gap_bound(inequality.alpha, q, p, phi)

    if tag in CONJUGATE_BOUNDS:
        kind = _divergence_kind(inequality, CONJUGATE_BOUNDS[tag])
        divergence = f_divergence(kind, q, p)
        if is_infinite(divergence):
            return _vacuous(inequality)
        moment = math.fsum(p.probs * conjugate_values(kind, phi.values))
        return _finite_or_infinite(divergence + moment)

    if tag == InequalityTag.KL_CONSTRAINED:
        divergence = f_divergence(DivergenceKind(DivergenceTag.KL), q, p)
        if is_infinite(divergence):
            return _vacuous(inequality)
        return _finite_or_infinite(divergence + float(logsumexp(phi.values, b=p.probs)))

    if tag == InequalityTag.TV_CONSTRAINED:
        divergence = f_divergence(DivergenceKind(DivergenceTag.TOTAL_VARIATION), q, p)
        return divergence + expectation(p, phi)

    if tag == InequalityTag.MULTIPLICATIVE_ALPHA:
        alpha = inequality.alpha
        divergence = f_divergence(DivergenceKind.alpha(alpha), q, p)
        if is_infinite(divergence):
            return _vacuous(inequality)
        conjugate_exponent = alpha / (alpha - 1.0)
        ratio_moment = alpha * (alpha - 1.0) * divergence + 1.0
        phi_moment = math.fsum(p.probs * np.abs(phi.values) ** conjugate_exponent)
        return _finite_or_infinite(ratio_moment ** (1.0 / alpha) * phi_moment ** (1.0 / conjugate_exponent))

    chi2 = f_divergence(PEARSON, q, p)
    if is_infinite(chi2):
        return _vacuous(inequality)
    if tag == InequalityTag.PEARSON_CHI2_CONSTRAINED:
        return chi2 + expectation(p, phi) + variance(p, phi) / 4.0
    if tag == InequalityTag.MULTIPLICATIVE_CHI2:
        return math.sqrt((chi2 + 1.0) * math.fsum(p.probs * phi.values ** 2))
    # HCR_CHI2
    return math.sqrt(chi2 * variance(p, phi))


def hcr_gap_bound(
    alpha: float,
    q: DiscreteDistribution,
    p: DiscreteDistribution,
    phi: TestFunction
) -> DivergenceValue:
    """
    Majore |E_Q[φ] - E_P[φ]| par D̃_α(Q‖P)^{1/α} · (E_P[|φ - μ_P|^{α/(α-1)}])^{(α-1)/α}.

    À α = 2, la borne vaut √(χ²(Q‖P) · Var_P[φ]).

    Raises:
        BadParameter: Si α ≤ 1
        SupportMismatch: Si les supports diffèrent
    """
    if not alpha > 1:
        raise BadParameter(f"alpha={alpha!r} doit être > 1.")
    divergence = pseudo_alpha_divergence(alpha, q, p)
    if is_infinite(divergence):
        logger.debug(f"Borne HCR vacuitaire (α={alpha!r}) : divergence infinie")
        return INFINITE
    conjugate_exponent = alpha / (alpha - 1.0)
    centered = np.abs(phi.values - expectation(p, phi))
    moment = math.fsum(p.probs * centered ** conjugate_exponent)
    return _finite_or_infinite(divergence ** (1.0 / alpha) * moment ** (1.0 / conjugate_exponent))


def constrained_chi2_optimal_density(p: DiscreteDistribution, phi: TestFunction) -> OptimalDensity:
    """
    Densité optimale p* = (φ - E_P[φ])/2 + 1 du problème χ² contraint.

    Σ p*_i P_i = 1 par construction ; p* peut être négative quand φ est très
    dispersée, ce que signale is_density.

    Raises:
        LengthMismatch: Si φ n'est pas aligné sur le support
    """
    mean = expectation(p, phi)
    values = (phi.values - mean) / 2.0 + 1.0
    is_density = bool(np.all(values >= 0))
    if not is_density:
        logger.debug(f"Densité optimale négative (min {float(values.min())!r})")
    return OptimalDensity(values=values, is_density=is_density)


def verify(
    inequality: InequalityId,
    q: DiscreteDistribution,
    p: DiscreteDistribution,
    phi: TestFunction
) -> BoundReport:
    """
    Compare E_Q[φ] (ou l'écart HCR) au membre de droite de l'inégalité.

    Returns:
        BoundReport: lhs, rhs, marge et verdict (tolérance -1e-9)

    Raises:
        PhiDomainError, SupportMismatch, LengthMismatch: Comme upper_bound
    """
    rhs = upper_bound(inequality, q, p, phi)
    lhs = expectation(q, phi)
    if inequality.is_gap:
        lhs = abs(lhs - expectation(p, phi))
    return BoundReport.from_sides(lhs, rhs)
