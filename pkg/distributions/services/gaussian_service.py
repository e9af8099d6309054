"""
Lois normales unidimensionnelles : paramètre de log-concavité et échantillonnage.
"""
import numpy as np

from app.exceptions import ZeroSamples
from ..models import Gaussian1D
from ..utils import rng_for


def gaussian_gamma(gaussian: Gaussian1D) -> float:
    """
    Retourne le paramètre de forte log-concavité d'une gaussienne.

    Pour N(μ, σ²), -log densité a pour dérivée seconde 1/σ².
    """
    return 1.0 / gaussian.variance


def sample_gaussian(gaussian: Gaussian1D, n: int, seed: int) -> np.ndarray:
    """
    Tire n échantillons i.i.d. de la gaussienne.

    Args:
        gaussian: Loi à échantillonner
        n: Nombre d'échantillons
        seed: Graine du générateur PCG64

    Returns:
        np.ndarray: n tirages, identiques pour une même graine

    Raises:
        ZeroSamples: Si n < 1
    """
    if n < 1:
        raise ZeroSamples(f"Nombre d'échantillons invalide : {n}")
    return rng_for(seed).normal(gaussian.mean, gaussian.std, size=n)
