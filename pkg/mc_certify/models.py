"""
Structures de données de l'application mc_certify.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _
from scipy.stats import norm

from app.exceptions import BadParameter
from distributions.models import INFINITE, DivergenceValue, Gaussian1D, is_infinite
from divergences.constants import PARAMETER_SEPARATOR
from pac_bayes.constants import PARAMETER_LIST_SEPARATOR


class IntervalKind(models.TextChoices):
    """Divergence utilisée pour le terme de biais."""
    PSEUDO_ALPHA = 'pseudo-alpha', _('Pseudo α-divergence')
    CHI2 = 'chi2', _('χ²')
    KL = 'kl', _('Kullback-Leibler')


class Variant(models.TextChoices):
    """
    Constantes des demi-largeurs.

    PRINTED reprend les expressions telles qu'énoncées ; SOUND prend la
    racine du terme de déviation et le biais KL + L²/γ.
    """
    PRINTED = 'printed', _('Constantes énoncées')
    SOUND = 'sound', _('Constantes corrigées')


class PhiTag(models.TextChoices):
    AFFINE = 'affine', _('Affine')
    CLIPPED_AFFINE = 'clipped-affine', _('Affine tronquée')


@dataclass(frozen=True)
class CertifyInput:
    """
    Paramètres d'un intervalle Monte-Carlo.

    Attributes:
        L: Constante de Lipschitz de φ (> 0)
        gamma: Paramètre de forte log-concavité de P (> 0)
        n: Nombre d'échantillons (≥ 1)
        delta: Niveau de confiance dans ]0, 1[
        div: Divergence de la forme choisie (≥ 0 ou INFINITE)
        alpha: Ordre de la pseudo α-divergence (> 1), sinon None
    """
    L: float
    gamma: float
    n: int
    delta: float
    div: DivergenceValue
    alpha: Optional[float] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.L) and self.L > 0):
            raise BadParameter(f"L={self.L!r} doit être strictement positif.")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise BadParameter(f"gamma={self.gamma!r} doit être strictement positif.")
        if self.n < 1:
            raise BadParameter(f"n={self.n!r} doit être ≥ 1.")
        if not 0 < self.delta < 1:
            raise BadParameter(f"delta={self.delta!r} doit être dans ]0, 1[.")
        if not is_infinite(self.div) and not (self.div >= 0):
            raise BadParameter(f"Divergence négative : {self.div!r}")
        if self.alpha is not None and not self.alpha > 1:
            raise BadParameter(f"alpha={self.alpha!r} doit être > 1.")


@dataclass(frozen=True)
class IntervalTerms:
    """
    Termes d'une demi-largeur : déviation, biais K et niveau annoncé.
    """
    deviation_term: float
    bias_term: DivergenceValue
    level: float

    @property
    def half_width(self) -> DivergenceValue:
        if is_infinite(self.bias_term):
            return INFINITE
        return self.deviation_term + self.bias_term

    @property
    def vacuous(self) -> bool:
        return is_infinite(self.bias_term)


@dataclass(frozen=True)
class IntervalReport:
    """
    Intervalle certifié [estimate - half_width, estimate + half_width] pour E_Q[φ].
    """
    estimate: float
    deviation_term: float
    bias_term: DivergenceValue
    half_width: DivergenceValue
    level: float

    @classmethod
    def from_terms(cls, estimate: float, terms: IntervalTerms) -> 'IntervalReport':
        return cls(
            estimate=estimate,
            deviation_term=terms.deviation_term,
            bias_term=terms.bias_term,
            half_width=terms.half_width,
            level=terms.level,
        )

    @property
    def low(self) -> float:
        return -math.inf if is_infinite(self.half_width) else self.estimate - self.half_width

    @property
    def high(self) -> float:
        return math.inf if is_infinite(self.half_width) else self.estimate + self.half_width

    def contains(self, value: float) -> bool:
        return self.low <= value <= self.high

    def to_dict(self) -> dict:
        return {
            'estimate': self.estimate,
            'deviation_term': self.deviation_term,
            'bias_term': self.bias_term,
            'half_width': self.half_width,
            'level': self.level,
            'low': self.low,
            'high': self.high,
        }


@dataclass(frozen=True)
class PhiMap:
    """
    Fonction test x ↦ clip(slope·x + intercept, low, high).

    Sans bornes (low = -inf, high = +inf), φ est affine. La constante de
    Lipschitz vaut |slope| dans les deux cas.
    """
    slope: float
    intercept: float = 0.0
    low: float = -math.inf
    high: float = math.inf

    def __post_init__(self) -> None:
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise BadParameter("Pente et ordonnée à l'origine doivent être finies.")
        if not self.low < self.high:
            raise BadParameter(f"Bornes de troncature invalides : [{self.low!r}, {self.high!r}]")

    @classmethod
    def identity(cls) -> 'PhiMap':
        return cls(slope=1.0)

    @classmethod
    def parse(cls, token: str) -> 'PhiMap':
        """
        Lit un jeton affine:a,b ou clipped-affine:a,b,low,high.

        Raises:
            BadParameter: Si le jeton est mal formé
        """
        name, _sep, raw = token.strip().lower().partition(PARAMETER_SEPARATOR)
        try:
            tag = PhiTag(name)
            values = [float(item) for item in raw.split(PARAMETER_LIST_SEPARATOR)] if raw else []
        except ValueError as exc:
            raise BadParameter(f"Fonction test invalide : {token!r}") from exc
        expected = 2 if tag == PhiTag.AFFINE else 4
        if len(values) != expected:
            raise BadParameter(f"{tag.value} attend {expected} paramètres (reçu {token!r}).")
        return cls(*values)

    @property
    def is_clipped(self) -> bool:
        return math.isfinite(self.low) or math.isfinite(self.high)

    @property
    def token(self) -> str:
        if self.is_clipped:
            return f"{PhiTag.CLIPPED_AFFINE.value}:{self.slope!r},{self.intercept!r},{self.low!r},{self.high!r}"
        return f"{PhiTag.AFFINE.value}:{self.slope!r},{self.intercept!r}"

    @property
    def lipschitz(self) -> float:
        return abs(self.slope)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.clip(self.slope * np.asarray(x, dtype=float) + self.intercept, self.low, self.high)

    def gaussian_expectation(self, gaussian: Gaussian1D) -> float:
        """
        E[φ(X)] pour X ~ N(μ, σ²), en forme close.

        Avec Y = aX + b ~ N(m, s²), E[clip(Y, l, h)] vaut
        l·Φ(u) + h·(1 - Φ(v)) + m·(Φ(v) - Φ(u)) + s·(φ(u) - φ(v)),
        u = (l - m)/s et v = (h - m)/s.
        """
        mean = self.slope * gaussian.mean + self.intercept
        if self.slope == 0:
            return float(np.clip(mean, self.low, self.high))
        std = abs(self.slope) * gaussian.std
        u = (self.low - mean) / std
        v = (self.high - mean) / std
        value = mean * (norm.cdf(v) - norm.cdf(u)) + std * (norm.pdf(u) - norm.pdf(v))
        if math.isfinite(self.low):
            value += self.low * norm.cdf(u)
        if math.isfinite(self.high):
            value += self.high * norm.sf(v)
        return float(value)


@dataclass(frozen=True)
class McCoverageResult:
    """
    Résultat d'une expérience de couverture des intervalles Monte-Carlo.
    """
    repeats: int
    covered: int
    level: float
    truth: float
    mean_half_width: DivergenceValue

    @property
    def coverage(self) -> float:
        return self.covered / self.repeats if self.repeats else 0.0
