"""
Exceptions communes et correspondance avec les codes de sortie des commandes.
"""
import json


class CertifError(ValueError):
    """Erreur de validation ou de domaine (code de sortie 2)."""


class EmptySupport(CertifError):
    """Distribution sans aucun point."""


class NegativeMass(CertifError):
    """Probabilité strictement négative au-delà de la tolérance."""


class MassTooFar(CertifError):
    """Masse totale trop éloignée de 1 pour être renormalisée."""


class LengthMismatch(CertifError):
    """Fonction test et distribution de longueurs différentes."""


class SupportMismatch(CertifError):
    """Deux distributions définies sur des supports différents."""


class ZeroSamples(CertifError):
    """Demande d'un échantillon vide."""


class DomainError(CertifError):
    """Argument hors du domaine d'une fonction."""


class PhiDomainError(DomainError):
    """Fonction test hors de l'intervalle admis par une inégalité."""


class BadParameter(CertifError):
    """Paramètre invalide (alpha <= 1, delta hors de ]0, 1[, ...)."""


class LipschitzViolation(BadParameter):
    """Paire d'échantillons contredisant la constante de Lipschitz déclarée."""


class UnsupportedOperation(CertifError):
    """Opération sans forme close pour ce type de divergence."""


class ModelMismatch(CertifError):
    """Modèle de données incompatible avec la classe de perte déclarée."""


class NoConvergence(ArithmeticError):
    """Quadrature n'atteignant pas la précision demandée (code de sortie 4)."""


EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def exit_code_for(exc: BaseException) -> int:
    """
    Retourne le code de sortie associé à une exception.

    Args:
        exc: Exception levée pendant une commande

    Returns:
        int: 2 (validation), 3 (entrée/sortie) ou 4 (erreur interne)
    """
    # JSONDecodeError hérite de ValueError : à tester avant CertifError
    if isinstance(exc, (OSError, json.JSONDecodeError, UnicodeDecodeError)):
        return EXIT_IO
    if isinstance(exc, CertifError):
        return EXIT_VALIDATION
    return EXIT_INTERNAL
