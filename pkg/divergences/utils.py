"""
Utilitaires pour l'application divergences.
"""
import math
from typing import List

import numpy as np

from distributions.models import Interval, TestFunction

# Fenêtre de tirage des fonctions test aléatoires
SAMPLING_HALF_WIDTH = 3.0

# Marge laissée sous une borne ouverte (φ < 1 devient φ ≤ 0.99)
OPEN_BOUND_MARGIN = 0.01


def sampling_range(domain: Interval, half_width: float = SAMPLING_HALF_WIDTH) -> tuple:
    """
    Intervalle fermé de tirage contenu dans un domaine.

    Args:
        domain: Domaine admissible
        half_width: Demi-largeur maximale autour de 0

    Returns:
        tuple: (borne basse, borne haute) utilisables par rng.uniform
    """
    low = max(domain.low, -half_width)
    high = min(domain.high, half_width)
    if math.isfinite(domain.low) and low == domain.low and not domain.low_closed:
        low += OPEN_BOUND_MARGIN
    if math.isfinite(domain.high) and high == domain.high and not domain.high_closed:
        high -= OPEN_BOUND_MARGIN
    return low, high


def random_phi_grid(
    rng: np.random.Generator,
    domain: Interval,
    size: int,
    count: int
) -> List[TestFunction]:
    """
    Tire une grille de fonctions test uniformes dans un domaine.

    La grille contient toujours φ ≡ 0 quand 0 appartient au domaine.
    """
    low, high = sampling_range(domain)
    grid = [TestFunction(rng.uniform(low, high, size)) for _ in range(count)]
    if grid and domain.contains(0.0):
        grid[0] = TestFunction(np.zeros(size))
    return grid
