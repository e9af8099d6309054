"""
Structures de données de l'application pac_bayes.
"""
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from app.exceptions import BadParameter, LengthMismatch, ModelMismatch
from distributions.models import DiscreteDistribution, DivergenceValue, is_infinite
from divergences.constants import PARAMETER_SEPARATOR
from .constants import PARAMETER_LIST_SEPARATOR


class LossTag(models.TextChoices):
    """Classes de fonctions de perte."""
    BOUNDED = 'bounded', _('Perte bornée')
    SUB_GAUSSIAN = 'sub-gaussian', _('Perte sous-gaussienne')
    SUB_EXPONENTIAL = 'sub-exponential', _('Perte sous-exponentielle')
    BOUNDED_VARIANCE = 'bounded-variance', _('Perte à variance bornée')


class AddendForm(models.TextChoices):
    """Forme du terme de complexité."""
    MULTIPLICATIVE = 'multiplicative', _('Multiplicative')
    ADDITIVE = 'additive', _('Additive')


class DataModelKind(models.TextChoices):
    """Lois des pertes simulées par hypothèse."""
    BERNOULLI = 'bernoulli', _('Perte 0-1')
    GAUSSIAN = 'gaussian', _('Perte gaussienne')
    SHIFTED_EXPONENTIAL = 'shifted-exponential', _('Perte exponentielle décalée')


@dataclass(frozen=True)
class LossClass:
    """
    Classe de perte et ses paramètres.

    Attributes:
        tag: Classe
        param: R (bornée), σ (sous-gaussienne, sous-exponentielle) ou σ² (variance bornée)
        beta: β des pertes sous-exponentielles, sinon None
    """
    tag: LossTag
    param: float
    beta: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'tag', LossTag(self.tag))
        if not (math.isfinite(self.param) and self.param > 0):
            raise BadParameter(f"Paramètre de {self.tag.value} invalide : {self.param!r}")
        if self.tag == LossTag.SUB_EXPONENTIAL:
            if self.beta is None or not (math.isfinite(self.beta) and self.beta > 0):
                raise BadParameter(f"β invalide pour {self.tag.value} : {self.beta!r}")
        elif self.beta is not None:
            raise BadParameter(f"{self.tag.value} ne prend pas de β.")

    @classmethod
    def bounded(cls, bound: float) -> 'LossClass':
        return cls(LossTag.BOUNDED, bound)

    @classmethod
    def sub_gaussian(cls, sigma: float) -> 'LossClass':
        return cls(LossTag.SUB_GAUSSIAN, sigma)

    @classmethod
    def sub_exponential(cls, sigma: float, beta: float) -> 'LossClass':
        return cls(LossTag.SUB_EXPONENTIAL, sigma, beta)

    @classmethod
    def bounded_variance(cls, variance: float) -> 'LossClass':
        return cls(LossTag.BOUNDED_VARIANCE, variance)

    @classmethod
    def parse(cls, token: str) -> 'LossClass':
        """
        Lit un jeton (bounded:1, sub-gaussian:0.5, sub-exponential:1,1, bounded-variance:1).

        Raises:
            BadParameter: Si le jeton est inconnu ou les paramètres invalides
        """
        name, _sep, raw = token.strip().lower().partition(PARAMETER_SEPARATOR)
        try:
            tag = LossTag(name)
        except ValueError as exc:
            raise BadParameter(f"Classe de perte inconnue : {token!r}") from exc
        try:
            values = [float(part) for part in raw.split(PARAMETER_LIST_SEPARATOR)] if raw else []
        except ValueError as exc:
            raise BadParameter(f"Paramètre non numérique dans {token!r}") from exc
        expected = 2 if tag == LossTag.SUB_EXPONENTIAL else 1
        if len(values) != expected:
            raise BadParameter(f"{tag.value} attend {expected} paramètre(s) : {token!r}")
        return cls(tag, *values)

    @property
    def token(self) -> str:
        if self.beta is None:
            return f"{self.tag.value}{PARAMETER_SEPARATOR}{self.param!r}"
        return f"{self.tag.value}{PARAMETER_SEPARATOR}{self.param!r}{PARAMETER_LIST_SEPARATOR}{self.beta!r}"

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True)
class PacInput:
    """
    Paramètres d'un terme de complexité PAC-Bayésien.

    Attributes:
        m: Taille de l'échantillon (≥ 1)
        delta: Niveau de confiance dans ]0, 1[
        alpha: Ordre α > 1
        div: D_α(Q‖P), ≥ 0 ou INFINITE
    """
    m: int
    delta: float
    alpha: float
    div: DivergenceValue

    def __post_init__(self) -> None:
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise BadParameter(f"m={self.m!r} doit être un entier ≥ 1.")
        if not 0 < self.delta < 1:
            raise BadParameter(f"delta={self.delta!r} doit être dans ]0, 1[.")
        if not self.alpha > 1:
            raise BadParameter(f"alpha={self.alpha!r} doit être > 1.")
        if not is_infinite(self.div) and not (self.div >= 0 and math.isfinite(self.div)):
            raise BadParameter(f"Divergence invalide : {self.div!r}")
        object.__setattr__(self, 'm', int(self.m))


@dataclass(frozen=True, eq=False)
class DataModel:
    """
    Loi des pertes de chaque hypothèse.

    Attributes:
        kind: bernoulli (perte 0-1 de moyenne μ_h), gaussian (μ_h + N(0, s²))
            ou shifted-exponential (μ_h - b + Exp(b))
        means: Pertes moyennes μ_h
        scale: s pour gaussian, b pour shifted-exponential, ignoré pour bernoulli
    """
    kind: DataModelKind
    means: np.ndarray
    scale: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', DataModelKind(self.kind))
        means = np.array(self.means, dtype=float).reshape(-1)
        if means.size == 0 or not np.all(np.isfinite(means)):
            raise BadParameter("Les pertes moyennes doivent être finies et non vides.")
        if self.kind == DataModelKind.BERNOULLI and np.any((means < 0) | (means > 1)):
            raise BadParameter("Une perte 0-1 a une moyenne dans [0, 1].")
        if not (math.isfinite(self.scale) and self.scale >= 0):
            raise BadParameter(f"Échelle invalide : {self.scale!r}")
        if self.kind == DataModelKind.SHIFTED_EXPONENTIAL and self.scale == 0:
            raise BadParameter("L'échelle de la loi exponentielle doit être > 0.")
        means.setflags(write=False)
        object.__setattr__(self, 'means', means)

    @property
    def size(self) -> int:
        return int(self.means.size)

    def centered_noise(self, rng: np.random.Generator, m: int) -> np.ndarray:
        """Tire les écarts centrés ℓ - μ_h, tableau (hypothèses, m)."""
        shape = (self.size, m)
        if self.kind == DataModelKind.BERNOULLI:
            draws = rng.random(shape) < self.means[:, None]
            return draws - self.means[:, None]
        if self.kind == DataModelKind.GAUSSIAN:
            return rng.normal(0.0, self.scale, shape)
        return rng.exponential(self.scale, shape) - self.scale

    def certify(self, loss: LossClass) -> None:
        """
        Vérifie que les pertes simulées appartiennent à la classe déclarée.

        Perte 0-1 : bornée par R ≥ 1, sous-gaussienne pour σ ≥ ½, variance
        ≤ max μ(1-μ), sous-exponentielle pour σ ≥ ½ et tout β.
        Gaussienne N(μ, s²) : sous-gaussienne et sous-exponentielle pour σ ≥ s,
        variance s². Exponentielle d'échelle b : sous-exponentielle pour
        σ ≥ 2b et β ≥ 2b, variance b².

        Raises:
            ModelMismatch: Si la classe n'est pas certifiée par le modèle
        """
        tag = loss.tag
        certified = False
        if self.kind == DataModelKind.BERNOULLI:
            if tag == LossTag.BOUNDED:
                certified = loss.param >= 1.0
            elif tag in (LossTag.SUB_GAUSSIAN, LossTag.SUB_EXPONENTIAL):
                certified = loss.param >= 0.5
            else:
                certified = loss.param >= float(np.max(self.means * (1.0 - self.means)))
        elif self.kind == DataModelKind.GAUSSIAN:
            if tag in (LossTag.SUB_GAUSSIAN, LossTag.SUB_EXPONENTIAL):
                certified = loss.param >= self.scale
            elif tag == LossTag.BOUNDED_VARIANCE:
                certified = loss.param >= self.scale ** 2
        else:
            if tag == LossTag.SUB_EXPONENTIAL:
                certified = loss.param >= 2.0 * self.scale and loss.beta >= 2.0 * self.scale
            elif tag == LossTag.BOUNDED_VARIANCE:
                certified = loss.param >= self.scale ** 2
        if not certified:
            raise ModelMismatch(f"Le modèle {self.kind.value} ne certifie pas la classe {loss.token}.")


@dataclass(frozen=True)
class GibbsExperiment:
    """
    Expérience de Gibbs sur un ensemble fini d'hypothèses.

    Attributes:
        prior: Loi a priori P sur les hypothèses
        data_model: Loi des pertes par hypothèse
        m: Taille de l'échantillon d'apprentissage
        trials: Nombre d'essais
        seed: Graine de base (l'essai i utilise seed + i)
        posterior: Loi a posteriori Q fixe, ou None pour la loi tempérée
        temperature: λ de la loi tempérée Q ∝ P·exp(-λ·m·R̂_h)
    """
    prior: DiscreteDistribution
    data_model: DataModel
    m: int
    trials: int
    seed: int
    posterior: Optional[DiscreteDistribution] = None
    temperature: float = 0.0

    def __post_init__(self) -> None:
        if self.prior.size != self.data_model.size:
            raise LengthMismatch(
                f"{self.prior.size} hypothèses a priori pour {self.data_model.size} pertes moyennes."
            )
        if self.posterior is not None:
            self.posterior.check_same_support(self.prior)
        if self.m < 1:
            raise BadParameter(f"m={self.m!r} doit être ≥ 1.")
        if self.trials < 1:
            raise BadParameter(f"Nombre d'essais invalide : {self.trials!r}")
        if self.seed < 0:
            raise BadParameter(f"Graine négative : {self.seed!r}")
        if not (math.isfinite(self.temperature) and self.temperature >= 0):
            raise BadParameter(f"Température invalide : {self.temperature!r}")

    @property
    def hypotheses(self) -> Tuple[str, ...]:
        return self.prior.labels

    @property
    def tempered(self) -> bool:
        return self.posterior is None


@dataclass(frozen=True)
class CoverageResult:
    """
    Résultat d'une expérience de couverture.

    Attributes:
        trials: Nombre d'essais
        violations: Essais où R_D(G_Q) > R_S(G_Q) + terme
        vacuous: Vrai si le terme est infini (aucune violation possible)
        addends: Terme de complexité de chaque essai
    """
    trials: int
    violations: int
    vacuous: bool
    addends: Tuple[DivergenceValue, ...] = field(default=(), repr=False)

    @property
    def violation_rate(self) -> float:
        return self.violations / self.trials if self.trials else 0.0
