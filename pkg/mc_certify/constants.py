"""
Constantes de l'application mc_certify.
"""
# Troncature de la quadrature : ±12 écarts-types de P, prolongée tant que la queue dépasse 1e-10
QUADRATURE_HALF_WIDTH = 12.0
QUADRATURE_TAIL_TOLERANCE = 1e-10
QUADRATURE_ABS_TOLERANCE = 1e-8
# Erreur d'arrondi relative admise pour les grandes valeurs
QUADRATURE_REL_TOLERANCE = 1e-12
QUADRATURE_MAX_EXTENSIONS = 20
QUADRATURE_SUBDIVISIONS = 200

# Demi-largeurs et intervalles
TERM_TOLERANCE = 1e-12

# Contrôle de la constante de Lipschitz déclarée sur des paires consécutives
LIPSCHITZ_TOLERANCE = 1e-9

DEFAULT_SAMPLE_SIZE = 10_000
DEFAULT_DELTA = 0.05
DEFAULT_ALPHA = 2.0
DEFAULT_REPEATS = 500
