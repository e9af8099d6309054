"""
Divergences entre lois normales unidimensionnelles : formes closes et quadrature.
"""
import logging
import math
from typing import Callable, List, Tuple

from scipy.integrate import quad
from scipy.stats import norm

from app.exceptions import BadParameter, NoConvergence, UnsupportedOperation
from distributions.models import INFINITE, DivergenceValue, Gaussian1D
from divergences.models import DivergenceKind, DivergenceTag
from ..constants import (
    QUADRATURE_ABS_TOLERANCE,
    QUADRATURE_HALF_WIDTH,
    QUADRATURE_MAX_EXTENSIONS,
    QUADRATURE_REL_TOLERANCE,
    QUADRATURE_SUBDIVISIONS,
    QUADRATURE_TAIL_TOLERANCE,
)
from ..models import IntervalKind

logger = logging.getLogger(__name__)

QUADRATURE_TAGS = frozenset({DivergenceTag.PSEUDO_ALPHA, DivergenceTag.PEARSON_CHI2, DivergenceTag.KL})

# exp() déborde au-delà
LOG_OVERFLOW = 700.0


def chi2_gaussian(q: Gaussian1D, p: Gaussian1D) -> DivergenceValue:
    """
    χ²(Q‖P) entre deux gaussiennes.

    χ² + 1 = σ_P² / (σ_Q·√(2σ_P² - σ_Q²)) · exp((μ_Q - μ_P)²/(2σ_P² - σ_Q²)).

    Returns:
        DivergenceValue: INFINITE si 2σ_P² ≤ σ_Q² (intégrale divergente)
    """
    spread = 2.0 * p.variance - q.variance
    if spread <= 0:
        logger.debug(f"χ² infini : 2·{p.variance!r} ≤ {q.variance!r}")
        return INFINITE
    log_moment = (
        math.log(p.variance)
        - 0.5 * math.log(q.variance)
        - 0.5 * math.log(spread)
        + (q.mean - p.mean) ** 2 / spread
    )
    if log_moment > LOG_OVERFLOW:
        logger.debug(f"χ² hors de la plage des flottants (log(χ²+1) = {log_moment!r})")
        return INFINITE
    return max(math.expm1(log_moment), 0.0)


def kl_gaussian(q: Gaussian1D, p: Gaussian1D) -> float:
    """
    KL(Q‖P) = ½(σ_Q²/σ_P² + (μ_Q - μ_P)²/σ_P² - 1 + log(σ_P²/σ_Q²)).
    """
    ratio = q.variance / p.variance
    value = 0.5 * (ratio + (q.mean - p.mean) ** 2 / p.variance - 1.0 - math.log(ratio))
    return max(value, 0.0)


def _log_ratio(q: Gaussian1D, p: Gaussian1D, x: float) -> Tuple[float, float, float]:
    log_q = float(norm.logpdf(x, q.mean, q.std))
    log_p = float(norm.logpdf(x, p.mean, p.std))
    return log_q, log_p, log_q - log_p


def _power_integrand(q: Gaussian1D, p: Gaussian1D, exponent: float) -> Callable[[float], float]:
    # |r - 1|^a·p calculé en log
    def integrand(x: float) -> float:
        _log_q, log_p, log_r = _log_ratio(q, p, x)
        if log_r > LOG_OVERFLOW:
            log_gap = log_r
        else:
            gap = abs(math.expm1(log_r))
            if gap == 0.0:
                return 0.0
            log_gap = math.log(gap)
        return math.exp(exponent * log_gap + log_p)

    return integrand


def _kl_integrand(q: Gaussian1D, p: Gaussian1D) -> Callable[[float], float]:
    # p·(r log r - r + 1) = q·log r - q + p
    def integrand(x: float) -> float:
        log_q, log_p, log_r = _log_ratio(q, p, x)
        density_q = math.exp(log_q)
        return density_q * log_r - density_q + math.exp(log_p)

    return integrand


def _quad_piece(integrand: Callable[[float], float], low: float, high: float, points: List[float]) -> float:
    inside = [point for point in points if low < point < high] or None
    result = quad(
        integrand,
        low,
        high,
        points=inside,
        epsabs=QUADRATURE_ABS_TOLERANCE,
        epsrel=QUADRATURE_REL_TOLERANCE,
        limit=QUADRATURE_SUBDIVISIONS,
        full_output=1,
    )
    value, error = result[0], result[1]
    if not error <= max(QUADRATURE_ABS_TOLERANCE, QUADRATURE_REL_TOLERANCE * abs(value)):
        raise NoConvergence(f"Quadrature sur [{low!r}, {high!r}] : erreur estimée {error!r}")
    return value


def integrate_gaussian_window(
    integrand: Callable[[float], float],
    center: float,
    scale: float,
    points: List[float]
) -> float:
    """
    Intègre sur [center - 12·scale, center + 12·scale], puis ajoute des
    tranches de même largeur de chaque côté tant que leur contribution
    dépasse 1e-10.

    Raises:
        NoConvergence: Si une tranche n'atteint pas la précision 1e-8 ou si
        la queue reste significative après le nombre maximal d'extensions
    """
    width = QUADRATURE_HALF_WIDTH * scale
    total = _quad_piece(integrand, center - width, center + width, points)
    for direction in (-1.0, 1.0):
        edge = center + direction * width
        for _extension in range(QUADRATURE_MAX_EXTENSIONS):
            low, high = sorted((edge, edge + direction * 2.0 * width))
            piece = _quad_piece(integrand, low, high, points)
            total += piece
            edge += direction * 2.0 * width
            if abs(piece) < QUADRATURE_TAIL_TOLERANCE:
                break
        else:
            raise NoConvergence(f"Queue non négligeable après {QUADRATURE_MAX_EXTENSIONS} extensions")
    return total


def _power_integrable(exponent: float, q: Gaussian1D, p: Gaussian1D) -> bool:
    # |q/p|^a·p intégrable ssi (a - 1)·σ_Q² < a·σ_P²
    return (exponent - 1.0) * q.variance < exponent * p.variance


def divergence_by_quadrature(kind: DivergenceKind, q: Gaussian1D, p: Gaussian1D) -> DivergenceValue:
    """
    Calcule D_f(Q‖P) = ∫ f(q/p)·p par quadrature adaptative.

    Args:
        kind: Pseudo α-divergence, χ² de Pearson ou KL
        q: Gaussienne Q
        p: Gaussienne de référence P

    Returns:
        DivergenceValue: Valeur ≥ 0, INFINITE si l'intégrande n'est pas intégrable

    Raises:
        UnsupportedOperation: Pour les autres divergences
        NoConvergence: Si la précision demandée n'est pas atteinte
    """
    if kind.tag not in QUADRATURE_TAGS:
        raise UnsupportedOperation(f"Pas de quadrature gaussienne pour {kind.token}.")
    if q == p:
        return 0.0

    if kind.tag == DivergenceTag.KL:
        integrand = _kl_integrand(q, p)
    else:
        exponent = 2.0 if kind.tag == DivergenceTag.PEARSON_CHI2 else kind.param
        if not _power_integrable(exponent, q, p):
            logger.debug(f"{kind.token} infinie : rapport de densités non intégrable")
            return INFINITE
        integrand = _power_integrand(q, p, exponent)

    try:
        value = integrate_gaussian_window(integrand, p.mean, p.std, [q.mean, p.mean])
    except OverflowError:
        logger.warning(f"{kind.token} hors de la plage des flottants pour Q={q}, P={p}")
        return INFINITE
    if not math.isfinite(value):
        return INFINITE
    return max(value, 0.0)


def pseudo_alpha_gaussian(alpha: float, q: Gaussian1D, p: Gaussian1D) -> DivergenceValue:
    """
    D̃_α(Q‖P) = ∫ |q/p - 1|^α·p entre deux gaussiennes.

    Infinie dès que (α - 1)·σ_Q² ≥ α·σ_P².

    Raises:
        BadParameter: Si α ≤ 1
        NoConvergence: Si la précision 1e-8 n'est pas atteinte
    """
    if not alpha > 1:
        raise BadParameter(f"alpha={alpha!r} doit être > 1.")
    return divergence_by_quadrature(DivergenceKind.pseudo_alpha(alpha), q, p)


def gaussian_divergence(kind: IntervalKind, q: Gaussian1D, p: Gaussian1D, alpha: float = 2.0) -> DivergenceValue:
    """
    Divergence de la forme d'intervalle demandée (kl, chi2 ou pseudo-alpha).
    """
    if kind == IntervalKind.KL:
        return kl_gaussian(q, p)
    if kind == IntervalKind.CHI2:
        return chi2_gaussian(q, p)
    return pseudo_alpha_gaussian(alpha, q, p)
