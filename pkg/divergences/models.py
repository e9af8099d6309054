"""
Structures de données de l'application divergences.
"""
from dataclasses import dataclass
from typing import Optional

from django.db import models
from django.utils.translation import gettext_lazy as _

from app.exceptions import BadParameter
from .constants import PARAMETER_SEPARATOR


class DivergenceTag(models.TextChoices):
    """Familles de f-divergences, avec leur jeton de ligne de commande."""
    KL = 'kl', _('Kullback-Leibler')
    REVERSE_KL = 'reverse-kl', _('Kullback-Leibler inverse')
    PEARSON_CHI2 = 'pearson-chi2', _('χ² de Pearson')
    NEYMAN_CHI2 = 'neyman-chi2', _('χ² de Neyman')
    TOTAL_VARIATION = 'tv', _('Variation totale')
    SQUARED_HELLINGER = 'hellinger2', _('Hellinger au carré')
    ALPHA = 'alpha', _('α-divergence')
    PSEUDO_ALPHA = 'pseudo-alpha', _('Pseudo α-divergence')
    PHI_P = 'phi-p', _('φ_p-divergence')


PARAMETERIZED_TAGS = frozenset({
    DivergenceTag.ALPHA,
    DivergenceTag.PSEUDO_ALPHA,
    DivergenceTag.PHI_P,
})


@dataclass(frozen=True)
class DivergenceKind:
    """
    Sélecteur de f-divergence portant ses paramètres.

    Attributes:
        tag: Famille de divergence
        param: α pour ALPHA et PSEUDO_ALPHA, p pour PHI_P (> 1), sinon None
    """
    tag: DivergenceTag
    param: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'tag', DivergenceTag(self.tag))
        if self.tag in PARAMETERIZED_TAGS:
            if self.param is None:
                raise BadParameter(f"Paramètre requis pour {self.tag.value}.")
            param = float(self.param)
            if not param > 1:
                raise BadParameter(f"{self.tag.value} exige un paramètre > 1 (reçu {param!r}).")
            object.__setattr__(self, 'param', param)
        elif self.param is not None:
            raise BadParameter(f"{self.tag.value} ne prend pas de paramètre.")

    @classmethod
    def alpha(cls, value: float) -> 'DivergenceKind':
        return cls(DivergenceTag.ALPHA, value)

    @classmethod
    def pseudo_alpha(cls, value: float) -> 'DivergenceKind':
        return cls(DivergenceTag.PSEUDO_ALPHA, value)

    @classmethod
    def phi_p(cls, value: float) -> 'DivergenceKind':
        return cls(DivergenceTag.PHI_P, value)

    @classmethod
    def parse(cls, token: str) -> 'DivergenceKind':
        """
        Lit un jeton de ligne de commande (kl, alpha:1.5, ...).

        Raises:
            BadParameter: Si le jeton est inconnu ou le paramètre invalide
        """
        name, _sep, raw = token.strip().lower().partition(PARAMETER_SEPARATOR)
        try:
            tag = DivergenceTag(name)
        except ValueError as exc:
            raise BadParameter(f"Divergence inconnue : {token!r}") from exc
        if not raw:
            return cls(tag)
        try:
            param = float(raw)
        except ValueError as exc:
            raise BadParameter(f"Paramètre non numérique dans {token!r}") from exc
        return cls(tag, param)

    @property
    def token(self) -> str:
        """Jeton de ligne de commande."""
        if self.param is None:
            return self.tag.value
        return f"{self.tag.value}{PARAMETER_SEPARATOR}{self.param!r}"

    def __str__(self) -> str:
        return self.token
