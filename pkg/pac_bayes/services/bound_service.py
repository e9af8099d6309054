"""
Service de calcul des termes de complexité PAC-Bayésiens.
"""
import logging
import math
from typing import Tuple

from app.exceptions import BadParameter
from distributions.models import INFINITE, DivergenceValue, is_infinite
from ..constants import REGIME_GAUSSIAN, REGIME_SMALL_M
from ..models import AddendForm, LossClass, LossTag, PacInput

logger = logging.getLogger(__name__)


def _check_confidence(m: int, delta: float) -> None:
    if m < 1:
        raise BadParameter(f"m={m!r} doit être ≥ 1.")
    if not 0 < delta < 1:
        raise BadParameter(f"delta={delta!r} doit être dans ]0, 1[.")


def subexp_regime(sigma: float, beta: float, m: int, delta: float) -> str:
    """
    Régime de K¹_δ : gaussien si 2β²log(2/δ)/σ² ≤ m, petit m sinon.
    """
    _check_confidence(m, delta)
    if not (sigma > 0 and beta > 0):
        raise BadParameter(f"σ={sigma!r} et β={beta!r} doivent être > 0.")
    threshold = 2.0 * beta ** 2 * math.log(2.0 / delta) / sigma ** 2
    return REGIME_GAUSSIAN if threshold <= m else REGIME_SMALL_M


def subexp_K1(sigma: float, beta: float, m: int, delta: float) -> float:
    """
    Calcule K¹_δ pour une perte sous-exponentielle de paramètres (σ, β).

    K¹_δ = 2σ²/m·log(2/δ) si 2β²log(2/δ)/σ² ≤ m, (2β/m·log(2/δ))² sinon.
    La frontière m = m* appartient au régime gaussien.

    Raises:
        BadParameter: Si un paramètre est invalide
    """
    regime = subexp_regime(sigma, beta, m, delta)
    log_term = math.log(2.0 / delta)
    if regime == REGIME_GAUSSIAN:
        return 2.0 * sigma ** 2 / m * log_term
    return (2.0 * beta / m * log_term) ** 2


def scale_term(loss: LossClass, m: int, delta: float) -> float:
    """
    Facteur X de la classe de perte, commun aux deux formes.

    Bornée : (R²/2)·log(2/δ) ; sous-gaussienne : 2σ²·log(2/δ) ;
    variance bornée : σ²/δ ; sous-exponentielle : m·K¹_δ.

    Raises:
        BadParameter: Si m < 1 ou δ hors de ]0, 1[
    """
    _check_confidence(m, delta)
    log_term = math.log(2.0 / delta)
    if loss.tag == LossTag.BOUNDED:
        return loss.param ** 2 / 2.0 * log_term
    if loss.tag == LossTag.SUB_GAUSSIAN:
        return 2.0 * loss.param ** 2 * log_term
    if loss.tag == LossTag.BOUNDED_VARIANCE:
        return loss.param / delta
    return m * subexp_K1(loss.param, loss.beta, m, delta)


def addend_multiplicative(loss: LossClass, pac: PacInput) -> DivergenceValue:
    """
    Terme √((X/m)·(α(α-1)D_α(Q‖P) + 1)^{1/α}).

    Returns:
        DivergenceValue: Terme ≥ 0, INFINITE si la divergence est infinie
    """
    if is_infinite(pac.div):
        return INFINITE
    scale = scale_term(loss, pac.m, pac.delta)
    moment = pac.alpha * (pac.alpha - 1.0) * pac.div + 1.0
    return math.sqrt(scale / pac.m * moment ** (1.0 / pac.alpha))


def addend_additive(loss: LossClass, pac: PacInput) -> DivergenceValue:
    """
    Terme √((1/m)(D_α + 1/(α(α-1))) + (1/(mα))·((α-1)X)^{α/(α-1)}), avec t = m.

    Returns:
        DivergenceValue: Terme ≥ 0, INFINITE si la divergence est infinie
    """
    if is_infinite(pac.div):
        return INFINITE
    alpha = pac.alpha
    scale = scale_term(loss, pac.m, pac.delta)
    divergence_term = (pac.div + 1.0 / (alpha * (alpha - 1.0))) / pac.m
    scale_power = ((alpha - 1.0) * scale) ** (alpha / (alpha - 1.0)) / (pac.m * alpha)
    return math.sqrt(divergence_term + scale_power)


def addend(loss: LossClass, pac: PacInput, form: AddendForm) -> DivergenceValue:
    """Terme de complexité de la forme demandée."""
    if AddendForm(form) == AddendForm.MULTIPLICATIVE:
        return addend_multiplicative(loss, pac)
    return addend_additive(loss, pac)


def _chi2_inputs(loss: LossClass, m: int, delta: float, chi2: DivergenceValue) -> Tuple[float, float]:
    if not is_infinite(chi2) and not chi2 >= 0:
        raise BadParameter(f"χ² invalide : {chi2!r}")
    return scale_term(loss, m, delta), chi2


def addend_chi2_multiplicative(loss: LossClass, m: int, delta: float, chi2: DivergenceValue) -> DivergenceValue:
    """Terme √((X/m)·√(χ²(Q‖P) + 1))."""
    scale, chi2 = _chi2_inputs(loss, m, delta, chi2)
    if is_infinite(chi2):
        return INFINITE
    return math.sqrt(scale / m * math.sqrt(chi2 + 1.0))


def addend_chi2_additive(loss: LossClass, m: int, delta: float, chi2: DivergenceValue) -> DivergenceValue:
    """Terme √((1/2m)·(χ²(Q‖P) + 1 + X²))."""
    scale, chi2 = _chi2_inputs(loss, m, delta, chi2)
    if is_infinite(chi2):
        return INFINITE
    return math.sqrt((chi2 + 1.0 + scale ** 2) / (2.0 * m))


def addend_chi2_absolute(loss: LossClass, m: int, delta: float, chi2: DivergenceValue) -> DivergenceValue:
    """
    Terme √((X/m)·(χ²(Q‖P) + 1)) obtenu avec l'écart |q - p| au lieu de (q - p)².

    Sert uniquement de point de comparaison : il domine addend_chi2_multiplicative.
    """
    scale, chi2 = _chi2_inputs(loss, m, delta, chi2)
    if is_infinite(chi2):
        return INFINITE
    return math.sqrt(scale / m * (chi2 + 1.0))
