"""
Constantes de l'application divergences.
"""
# Valeurs finies dans [-1e-12, 0[ ramenées à 0
NEGATIVE_CLAMP_TOLERANCE = 1e-12

# Tolérance de la borne variationnelle par rapport à la divergence
VARIATIONAL_TOLERANCE = 1e-9

# Recherche numérique du supremum xy - f(x)
ORACLE_X_HALF_WIDTH = 50.0
ORACLE_STEP = 1e-4

# Séparateur entre le nom d'une divergence et son paramètre (alpha:1.5)
PARAMETER_SEPARATOR = ':'
