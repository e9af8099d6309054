"""
Structures de données de l'application distributions.

Ces structures sont immuables et ne sont pas persistées : l'application ne
déclare aucune table.
"""
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from app.exceptions import (
    BadParameter,
    DomainError,
    EmptySupport,
    LengthMismatch,
    MassTooFar,
    NegativeMass,
    SupportMismatch,
)
from .constants import MASS_TOLERANCE


class Infinite:
    """
    Marqueur de valeur infinie (divergence ou borne vacuitaire).

    Distinct de float('inf') : une borne infinie est signalée comme vacuitaire
    au lieu de se propager silencieusement dans les calculs.
    """
    _instance: Optional['Infinite'] = None

    def __new__(cls) -> 'Infinite':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'INFINITE'

    def __str__(self) -> str:
        return 'inf'

    def __reduce__(self):
        return (Infinite, ())


INFINITE = Infinite()

# Valeur d'une divergence : réel ≥ 0 ou INFINITE
DivergenceValue = Union[float, Infinite]


def is_infinite(value: Any) -> bool:
    """Indique si la valeur est le marqueur INFINITE."""
    return value is INFINITE


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """
    Distribution de probabilité sur un support fini ordonné.

    Attributes:
        probs: Poids de probabilité, positifs, de somme 1 à 1e-9 près
        labels: Étiquettes distinctes des points (indices par défaut)
    """
    probs: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float).reshape(-1)
        if probs.size == 0:
            raise EmptySupport("Le support de la distribution est vide.")
        if not np.all(np.isfinite(probs)):
            raise DomainError("Les probabilités doivent être finies.")
        if np.any(probs < 0):
            raise NegativeMass(f"Probabilité négative : {float(probs.min())!r}")
        total = math.fsum(probs)
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise MassTooFar(f"Masse totale {total!r} différente de 1.")

        labels = tuple(str(label) for label in self.labels) if self.labels else tuple(
            str(index) for index in range(probs.size)
        )
        if len(labels) != probs.size:
            raise LengthMismatch(
                f"{len(labels)} étiquettes pour {probs.size} probabilités."
            )
        if len(set(labels)) != len(labels):
            raise BadParameter("Les étiquettes du support doivent être distinctes.")

        probs.setflags(write=False)
        object.__setattr__(self, 'probs', probs)
        object.__setattr__(self, 'labels', labels)

    @property
    def size(self) -> int:
        """Nombre de points du support."""
        return int(self.probs.size)

    def check_same_support(self, other: 'DiscreteDistribution') -> None:
        """
        Vérifie que deux distributions partagent le même support.

        Raises:
            SupportMismatch: Si les étiquettes diffèrent
        """
        if self.labels != other.labels:
            raise SupportMismatch(
                f"Supports différents ({self.size} et {other.size} points)."
            )

    def to_dict(self) -> Dict[str, Any]:
        """Représentation au format des fichiers de distribution."""
        return {'probs': [float(p) for p in self.probs], 'labels': list(self.labels)}


@dataclass(frozen=True, eq=False)
class TestFunction:
    """
    Fonction test φ donnée par ses valeurs sur un support.

    Attributes:
        values: Valeurs finies alignées sur le support
    """
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise DomainError("Les valeurs de la fonction test doivent être finies.")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def check_aligned(self, distribution: DiscreteDistribution) -> None:
        """
        Vérifie l'alignement avec une distribution.

        Raises:
            LengthMismatch: Si les longueurs diffèrent
        """
        if self.size != distribution.size:
            raise LengthMismatch(
                f"Fonction test de longueur {self.size} pour un support de {distribution.size} points."
            )


@dataclass(frozen=True)
class Gaussian1D:
    """Loi normale unidimensionnelle N(mean, variance)."""
    mean: float
    variance: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mean) and math.isfinite(self.variance)):
            raise BadParameter("Moyenne et variance doivent être finies.")
        if self.variance <= 0:
            raise BadParameter(f"Variance {self.variance!r} non strictement positive.")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class LogConcaveSpec:
    """
    Loi fortement log-concave décrite par son paramètre γ et un échantillonneur.

    Attributes:
        gamma: Paramètre de forte log-concavité (> 0)
        sampler: Application déterministe (seed, index) → échantillon réel
    """
    gamma: float
    sampler: Callable[[int, int], float]

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise BadParameter(f"gamma={self.gamma!r} doit être strictement positif.")

    def sample(self, seed: int, n: int) -> np.ndarray:
        """Tire les échantillons d'indices 0..n-1 pour une graine."""
        return np.array([self.sampler(seed, index) for index in range(n)], dtype=float)

    @classmethod
    def from_gaussian(cls, gaussian: Gaussian1D) -> 'LogConcaveSpec':
        """
        Construit la spécification d'une gaussienne (γ = 1/variance).

        Chaque échantillon est tiré d'un flux PCG64 propre à (seed, index).
        """
        def sampler(seed: int, index: int) -> float:
            rng = np.random.default_rng([seed, index])
            return float(rng.normal(gaussian.mean, gaussian.std))

        return cls(gamma=1.0 / gaussian.variance, sampler=sampler)

    @classmethod
    def replay(cls, gamma: float, samples: Sequence[float]) -> 'LogConcaveSpec':
        """Spécification rejouant un échantillon déjà tiré (fichier d'échantillons)."""
        values = tuple(float(value) for value in samples)
        return cls(gamma=gamma, sampler=lambda _seed, index: values[index])


@dataclass(frozen=True)
class Interval:
    """Intervalle réel, éventuellement ouvert ou non borné."""
    low: float = -math.inf
    high: float = math.inf
    low_closed: bool = False
    high_closed: bool = False

    def contains(self, values: Union[float, Sequence[float], np.ndarray]) -> bool:
        """Indique si toutes les valeurs appartiennent à l'intervalle."""
        array = np.asarray(values, dtype=float)
        above = array >= self.low if self.low_closed else array > self.low
        below = array <= self.high if self.high_closed else array < self.high
        return bool(np.all(above & below))

    def is_within(self, other: 'Interval') -> bool:
        """Indique si l'intervalle est inclus dans un autre."""
        low_ok = self.low > other.low or (
            self.low == other.low and (other.low_closed or not self.low_closed)
        )
        high_ok = self.high < other.high or (
            self.high == other.high and (other.high_closed or not self.high_closed)
        )
        return low_ok and high_ok

    def __str__(self) -> str:
        left = '[' if self.low_closed else '('
        right = ']' if self.high_closed else ')'
        return f"{left}{self.low}, {self.high}{right}"


REALS = Interval()
