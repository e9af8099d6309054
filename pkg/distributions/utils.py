"""
Utilitaires pour l'application distributions.
"""
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Tuple, TypeVar, Union

import numpy as np

from app.exceptions import BadParameter

logger = logging.getLogger(__name__)

T = TypeVar('T')


def derive_seed(base_seed: int, trial_index: int) -> int:
    """Graine de l'essai trial_index : base_seed + trial_index."""
    return base_seed + trial_index


def rng_for(seed: int) -> np.random.Generator:
    """
    Retourne un générateur PCG64 initialisé par une graine.

    Raises:
        BadParameter: Si la graine est négative
    """
    if seed < 0:
        raise BadParameter(f"Graine négative : {seed}")
    return np.random.default_rng(seed)


def run_trials(
    trial: Callable[[int, np.random.Generator], T],
    trials: int,
    seed: int,
    workers: int = 1
) -> List[T]:
    """
    Exécute des essais indépendants, chacun avec son propre flux aléatoire.

    Le résultat ne dépend pas du nombre de threads : l'essai i reçoit
    toujours le générateur de graine seed + i, et les résultats sont
    retournés dans l'ordre des indices.

    Args:
        trial: Fonction (indice, générateur) → résultat
        trials: Nombre d'essais
        seed: Graine de base
        workers: Nombre de threads

    Returns:
        List: Résultats dans l'ordre des essais
    """
    if trials < 0:
        raise BadParameter(f"Nombre d'essais invalide : {trials}")
    if workers < 1:
        raise BadParameter(f"Nombre de threads invalide : {workers}")

    def run_one(index: int) -> T:
        return trial(index, rng_for(derive_seed(seed, index)))

    if workers == 1:
        return [run_one(index) for index in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run_one, range(trials)))


def random_probs(rng: np.random.Generator, size: int, zero_fraction: float = 0.0) -> np.ndarray:
    """
    Tire un vecteur de probabilités de Dirichlet(1, ..., 1).

    Args:
        rng: Générateur
        size: Taille du support
        zero_fraction: Probabilité de mettre un point à 0 (au moins un point reste chargé)

    Returns:
        np.ndarray: Vecteur de somme 1
    """
    weights = rng.dirichlet(np.ones(size))
    if zero_fraction > 0:
        mask = rng.random(size) < zero_fraction
        if mask.all():
            mask[rng.integers(size)] = False
        weights = np.where(mask, 0.0, weights)
        weights = weights / weights.sum()
    return weights


def _read_json(path: Union[str, Path]) -> dict:
    with open(path, encoding='utf-8') as handle:
        payload = json.load(handle)
    if not isinstance(payload, dict):
        raise json.JSONDecodeError("Objet JSON attendu", str(path), 0)
    return payload


def load_distribution(path: Union[str, Path]) -> Tuple[List[float], List[str]]:
    """
    Lit un fichier de distribution {"probs": [...], "labels": [...]}.

    Args:
        path: Chemin du fichier JSON

    Returns:
        Tuple: (probabilités, étiquettes ; liste vide si absentes)

    Raises:
        OSError: Si le fichier est illisible
        json.JSONDecodeError: Si le contenu n'a pas le format attendu
    """
    payload = _read_json(path)
    probs = payload.get('probs')
    labels = payload.get('labels') or []
    if not isinstance(probs, list) or not all(
        isinstance(value, (int, float)) and not isinstance(value, bool) for value in probs
    ):
        raise json.JSONDecodeError("Champ 'probs' absent ou non numérique", str(path), 0)
    if not isinstance(labels, list):
        raise json.JSONDecodeError("Champ 'labels' invalide", str(path), 0)
    logger.debug(f"Distribution lue depuis {path} ({len(probs)} points)")
    return [float(value) for value in probs], [str(label) for label in labels]


def load_test_function(path: Union[str, Path]) -> List[float]:
    """
    Lit un fichier de fonction test {"values": [...]}.

    Raises:
        OSError: Si le fichier est illisible
        json.JSONDecodeError: Si le contenu n'a pas le format attendu
    """
    payload = _read_json(path)
    values = payload.get('values')
    if not isinstance(values, list) or not all(
        isinstance(value, (int, float)) and not isinstance(value, bool) for value in values
    ):
        raise json.JSONDecodeError("Champ 'values' absent ou non numérique", str(path), 0)
    return [float(value) for value in values]


def load_samples(path: Union[str, Path]) -> np.ndarray:
    """
    Lit un fichier d'échantillons (un réel par ligne, lignes vides ignorées).

    Raises:
        OSError: Si le fichier est illisible ou contient une ligne non numérique
    """
    values = []
    with open(path, encoding='utf-8') as handle:
        for number, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError as exc:
                raise OSError(f"{path}:{number} : valeur non numérique {text!r}") from exc
    return np.array(values, dtype=float)
