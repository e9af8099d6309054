"""
Conjuguées convexes f*(y) = sup_x (xy - f(x)) : formes closes et contrôle numérique.
"""
import math

import numpy as np
from scipy.optimize import minimize_scalar

from app.exceptions import DomainError, UnsupportedOperation
from distributions.models import REALS, Interval
from ..constants import ORACLE_STEP, ORACLE_X_HALF_WIDTH
from ..models import DivergenceKind, DivergenceTag
from .generator_service import conjugate_generator, generator_domain, generator_values

BELOW_ONE = Interval(high=1.0)
NON_NEGATIVE = Interval(low=0.0, low_closed=True)


def conjugate_domain(kind: DivergenceKind) -> Interval:
    """
    Domaine effectif de la conjuguée en forme close.

    Raises:
        UnsupportedOperation: Pour la variation totale
    """
    tag = kind.tag
    if tag == DivergenceTag.TOTAL_VARIATION:
        raise UnsupportedOperation(
            "La variation totale n'a pas de conjuguée en forme close ; "
            "utiliser la borne dédiée de change_of_measure."
        )
    if tag in (DivergenceTag.REVERSE_KL, DivergenceTag.NEYMAN_CHI2, DivergenceTag.SQUARED_HELLINGER):
        return BELOW_ONE
    if tag == DivergenceTag.ALPHA:
        return NON_NEGATIVE
    return REALS


def conjugate_values(kind: DivergenceKind, y: np.ndarray) -> np.ndarray:
    """
    Évalue f* sur un tableau de points.

    Args:
        kind: Type de divergence
        y: Points du domaine effectif

    Returns:
        np.ndarray: Valeurs de f*

    Raises:
        DomainError: Si un point sort du domaine effectif
        UnsupportedOperation: Pour la variation totale
    """
    domain = conjugate_domain(kind)
    y = np.asarray(y, dtype=float)
    if not domain.contains(y):
        raise DomainError(f"Argument hors du domaine {domain} de la conjuguée de {kind.token}.")

    tag = kind.tag
    if tag == DivergenceTag.KL:
        return np.expm1(y)
    if tag == DivergenceTag.REVERSE_KL:
        # forme décalée ψ = φ - 1
        return -np.log1p(-y)
    if tag == DivergenceTag.PEARSON_CHI2:
        return y + y * y / 4.0
    if tag == DivergenceTag.NEYMAN_CHI2:
        return 2.0 - 2.0 * np.sqrt(1.0 - y)
    if tag == DivergenceTag.SQUARED_HELLINGER:
        return y / (1.0 - y)
    if tag == DivergenceTag.ALPHA:
        alpha = kind.param
        exponent = alpha / (alpha - 1.0)
        return (alpha - 1.0) ** exponent / alpha * y ** exponent + 1.0 / (alpha * (alpha - 1.0))
    if tag == DivergenceTag.PSEUDO_ALPHA:
        alpha = kind.param
        return y + (alpha - 1.0) * (np.abs(y) / alpha) ** (alpha / (alpha - 1.0))
    # PHI_P : supremum atteint en x = 0 pour y ≤ 0
    p = kind.param
    return (p - 1.0) * (np.maximum(y, 0.0) / p) ** (p / (p - 1.0)) + 1.0


def conjugate_fstar(kind: DivergenceKind, y: float) -> float:
    """
    Conjuguée convexe en forme close.

    Pearson : y + y²/4 ; α : ((α-1)^{α/(α-1)}/α)·y^{α/(α-1)} + 1/(α(α-1)) pour
    y ≥ 0 ; Hellinger : y/(1-y) ; Neyman : 2 - 2√(1-y) ; KL : e^y - 1 ;
    KL inverse (forme décalée) : log(1/(1-y)).

    Args:
        kind: Type de divergence
        y: Point du domaine effectif

    Returns:
        float: f*(y)

    Raises:
        DomainError: Si y est hors du domaine effectif
        UnsupportedOperation: Pour la variation totale
    """
    return float(conjugate_values(kind, np.float64(y)))


def conjugate_oracle(
    kind: DivergenceKind,
    y: float,
    half_width: float = ORACLE_X_HALF_WIDTH,
    step: float = ORACLE_STEP
) -> float:
    """
    Calcule numériquement sup_x (xy - f(x)) sur une grille puis l'affine.

    La recherche porte sur generator_domain(kind) ∩ [-half_width, half_width]
    avec le générateur apparié (conjugate_generator) ; le meilleur point de
    la grille est affiné par une minimisation scalaire bornée.

    Args:
        kind: Type de divergence
        y: Point d'évaluation
        half_width: Demi-largeur de la fenêtre de recherche
        step: Pas de la grille

    Returns:
        float: Supremum approché
    """
    domain = generator_domain(kind)
    low = max(domain.low, -half_width)
    if low == domain.low and not domain.low_closed:
        low += step
    grid = np.arange(low, half_width + step / 2, step)

    def objective(x):
        values = x * y - generator_values(kind, x)
        if kind.tag == DivergenceTag.REVERSE_KL:
            values = values - (x - 1.0)
        return values

    scores = objective(grid)
    best = int(np.nanargmax(scores))
    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, grid.size - 1)]
    if right > left:
        refined = minimize_scalar(
            lambda x: -float(objective(np.float64(x))),
            bounds=(left, right),
            method='bounded',
            options={'xatol': 1e-12},
        )
        return max(float(scores[best]), -float(refined.fun))
    return float(scores[best])


def young_fenchel_gap(kind: DivergenceKind, x: float, y: float) -> float:
    """
    Retourne f(x) + f*(y) - xy, positif par l'inégalité de Young-Fenchel.

    Le générateur utilisé est celui apparié à la conjuguée.
    """
    if not math.isfinite(x) or not math.isfinite(y):
        raise DomainError("Arguments non finis.")
    return conjugate_generator(kind, x) + conjugate_fstar(kind, y) - x * y
