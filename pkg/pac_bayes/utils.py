"""
Utilitaires pour l'application pac_bayes.
"""
from typing import Callable, List, TypeVar

import numpy as np

from app.exceptions import BadParameter
from distributions.models import INFINITE, DivergenceValue
from distributions.services.distribution_service import make_discrete
from .constants import MEAN_LOSS_HIGH, MEAN_LOSS_LOW
from .models import DataModel, DataModelKind, GibbsExperiment, LossClass

T = TypeVar('T')

POSTERIOR_PRIOR = 'prior'
POSTERIOR_TEMPERED = 'tempered'


def parse_list(text, cast: Callable[[str], T]) -> List[T]:
    """
    Lit une liste séparée par des virgules (« 100,200 »).

    Raises:
        BadParameter: Si la liste est vide ou un élément invalide
    """
    items = [item.strip() for item in str(text).split(',') if item.strip()]
    if not items:
        raise BadParameter("Liste vide.")
    try:
        return [cast(item) for item in items]
    except ValueError as exc:
        raise BadParameter(f"Élément invalide dans {text!r}") from exc


def parse_divergence(text: str) -> DivergenceValue:
    """Lit une valeur de divergence, « inf » désignant INFINITE."""
    if text.strip().lower() in ('inf', 'infinite'):
        return INFINITE
    return float(text)


def default_loss(kind: DataModelKind, scale: float) -> LossClass:
    """
    Classe de perte la plus fine certifiée par un modèle de données.

    0-1 : bornée par 1 ; gaussienne : sous-gaussienne de paramètre s ;
    exponentielle d'échelle b : sous-exponentielle (2b, 2b).
    """
    kind = DataModelKind(kind)
    if kind == DataModelKind.BERNOULLI:
        return LossClass.bounded(1.0)
    if kind == DataModelKind.GAUSSIAN:
        if scale == 0:
            raise BadParameter("Une perte gaussienne d'écart-type nul n'a pas de classe par défaut.")
        return LossClass.sub_gaussian(scale)
    return LossClass.sub_exponential(2.0 * scale, 2.0 * scale)


def build_experiment(
    kind: DataModelKind,
    hypotheses: int,
    m: int,
    trials: int,
    seed: int,
    scale: float = 1.0,
    posterior: str = POSTERIOR_PRIOR,
    temperature: float = 0.0
) -> GibbsExperiment:
    """
    Expérience à a priori uniforme et pertes moyennes réparties sur [0.1, 0.9].

    Args:
        kind: Loi des pertes
        hypotheses: Nombre d'hypothèses
        m: Taille de l'échantillon
        trials: Nombre d'essais
        seed: Graine de base
        scale: Écart-type (gaussian) ou échelle (shifted-exponential)
        posterior: « prior » (Q = P) ou « tempered » (Q ∝ P·exp(-λ·m·R̂))
        temperature: λ de la loi tempérée
    """
    if hypotheses < 1:
        raise BadParameter(f"Nombre d'hypothèses invalide : {hypotheses}")
    prior = make_discrete(np.full(hypotheses, 1.0 / hypotheses), [f"h{index}" for index in range(hypotheses)])
    model = DataModel(kind=kind, means=np.linspace(MEAN_LOSS_LOW, MEAN_LOSS_HIGH, hypotheses), scale=scale)
    if posterior not in (POSTERIOR_PRIOR, POSTERIOR_TEMPERED):
        raise BadParameter(f"Loi a posteriori inconnue : {posterior!r}")
    return GibbsExperiment(
        prior=prior,
        data_model=model,
        m=m,
        trials=trials,
        seed=seed,
        posterior=prior if posterior == POSTERIOR_PRIOR else None,
        temperature=temperature,
    )
