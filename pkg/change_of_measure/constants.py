"""
Constantes de l'application change_of_measure.
"""
# Une borne est tenue si rhs - lhs ≥ -SLACK_TOLERANCE
SLACK_TOLERANCE = 1e-9

# Valeur de α utilisée par `verify --inequality all` quand aucun n'est donné
DEFAULT_ALPHA = 2.0

# Tirage des fonctions test aléatoires : |φ| ≤ PHI_HALF_WIDTH, borné par le domaine
PHI_HALF_WIDTH = 3.0

# Part des points mis à zéro dans les mesures aléatoires
ZERO_FRACTION = 0.2

# Nombre d'essais par défaut d'un balayage de vérification
DEFAULT_TRIALS = 10_000
