"""
Structures de données de l'application change_of_measure.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from app.exceptions import BadParameter
from distributions.models import INFINITE, DivergenceValue, is_infinite
from divergences.constants import PARAMETER_SEPARATOR
from .constants import SLACK_TOLERANCE


class InequalityTag(models.TextChoices):
    """Inégalités de changement de mesure, avec leur jeton de ligne de commande."""
    KL_CONSTRAINED = 'kl-constrained', _('KL (représentation contrainte)')
    KL_UNCONSTRAINED = 'kl-unconstrained', _('KL (représentation non contrainte)')
    PEARSON_CHI2_CONSTRAINED = 'pearson-chi2-constrained', _('χ² de Pearson (contrainte)')
    PEARSON_CHI2_UNCONSTRAINED = 'pearson-chi2-unconstrained', _('χ² de Pearson (non contrainte)')
    TV_CONSTRAINED = 'tv-constrained', _('Variation totale')
    ALPHA_UNCONSTRAINED = 'alpha-unconstrained', _('α-divergence (non contrainte)')
    HELLINGER2_UNCONSTRAINED = 'hellinger2-unconstrained', _('Hellinger au carré')
    REVERSE_KL_UNCONSTRAINED = 'reverse-kl-unconstrained', _('KL inverse')
    NEYMAN_CHI2_UNCONSTRAINED = 'neyman-chi2-unconstrained', _('χ² de Neyman')
    MULTIPLICATIVE_CHI2 = 'multiplicative-chi2', _('χ² multiplicative')
    MULTIPLICATIVE_ALPHA = 'multiplicative-alpha', _('α multiplicative')
    HCR_CHI2 = 'hcr-chi2', _('Hammersley-Chapman-Robbins')
    HCR_GENERALIZED = 'hcr-generalized', _('Hammersley-Chapman-Robbins généralisée')


ALPHA_TAGS = frozenset({
    InequalityTag.ALPHA_UNCONSTRAINED,
    InequalityTag.MULTIPLICATIVE_ALPHA,
    InequalityTag.HCR_GENERALIZED,
})

# Le membre de gauche est l'écart |E_Q[φ] - E_P[φ]|
GAP_TAGS = frozenset({InequalityTag.HCR_CHI2, InequalityTag.HCR_GENERALIZED})


@dataclass(frozen=True)
class InequalityId:
    """
    Identifiant d'une inégalité de changement de mesure.

    Attributes:
        tag: Inégalité
        alpha: Paramètre α > 1 des inégalités paramétrées, sinon None
    """
    tag: InequalityTag
    alpha: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'tag', InequalityTag(self.tag))
        if self.tag in ALPHA_TAGS:
            if self.alpha is None:
                raise BadParameter(f"α requis pour {self.tag.value}.")
            alpha = float(self.alpha)
            if not alpha > 1:
                raise BadParameter(f"{self.tag.value} exige α > 1 (reçu {alpha!r}).")
            object.__setattr__(self, 'alpha', alpha)
        elif self.alpha is not None:
            raise BadParameter(f"{self.tag.value} ne prend pas de paramètre.")

    @classmethod
    def parse(cls, token: str) -> 'InequalityId':
        """
        Lit un jeton (kl-constrained, multiplicative-alpha:1.5, ...).

        Raises:
            BadParameter: Si le jeton est inconnu ou α invalide
        """
        name, _sep, raw = token.strip().lower().partition(PARAMETER_SEPARATOR)
        try:
            tag = InequalityTag(name)
        except ValueError as exc:
            raise BadParameter(f"Inégalité inconnue : {token!r}") from exc
        if not raw:
            return cls(tag)
        try:
            alpha = float(raw)
        except ValueError as exc:
            raise BadParameter(f"Paramètre non numérique dans {token!r}") from exc
        return cls(tag, alpha)

    @classmethod
    def every(cls, alpha: float) -> List['InequalityId']:
        """Les treize inégalités, les paramétrées avec le même α."""
        return [cls(tag, alpha if tag in ALPHA_TAGS else None) for tag in InequalityTag]

    @property
    def is_gap(self) -> bool:
        return self.tag in GAP_TAGS

    @property
    def token(self) -> str:
        if self.alpha is None:
            return self.tag.value
        return f"{self.tag.value}{PARAMETER_SEPARATOR}{self.alpha!r}"

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True)
class BoundReport:
    """
    Résultat d'une vérification lhs ≤ rhs.

    Attributes:
        lhs: E_Q[φ], ou |E_Q[φ] - E_P[φ]| pour les inégalités HCR
        rhs: Membre de droite, INFINITE si la divergence est infinie
        slack: rhs - lhs
        holds: slack ≥ -1e-9, ou rhs infini
    """
    lhs: float
    rhs: DivergenceValue
    slack: DivergenceValue
    holds: bool

    @classmethod
    def from_sides(cls, lhs: float, rhs: DivergenceValue) -> 'BoundReport':
        if is_infinite(rhs):
            return cls(lhs=lhs, rhs=INFINITE, slack=INFINITE, holds=True)
        slack = rhs - lhs
        return cls(lhs=lhs, rhs=rhs, slack=slack, holds=slack >= -SLACK_TOLERANCE)

    @property
    def vacuous(self) -> bool:
        return is_infinite(self.rhs)


@dataclass(frozen=True, eq=False)
class OptimalDensity:
    """
    Densité optimale du problème χ² contraint.

    Attributes:
        values: p*_i = (φ_i - E_P[φ])/2 + 1
        is_density: Vrai si tous les p*_i sont positifs
    """
    values: np.ndarray
    is_density: bool

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)


@dataclass(frozen=True)
class SweepResult:
    """
    Résultat d'un balayage de vérification sur des triplets aléatoires.

    Attributes:
        inequality: Inégalité vérifiée
        seed: Graine de base (l'essai i utilise seed + i)
        reports: Rapports dans l'ordre des essais
    """
    inequality: InequalityId
    seed: int
    reports: Tuple[BoundReport, ...]

    @property
    def trials(self) -> int:
        return len(self.reports)

    @property
    def violations(self) -> int:
        return sum(1 for report in self.reports if not report.holds)

    @property
    def vacuous(self) -> int:
        return sum(1 for report in self.reports if report.vacuous)

    @property
    def worst_slack(self) -> DivergenceValue:
        """Plus petite marge finie, INFINITE si toutes les bornes sont vacuitaires."""
        finite = [report.slack for report in self.reports if not report.vacuous]
        return min(finite) if finite else INFINITE
