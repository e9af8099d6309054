"""
Constantes de l'application distributions.
"""
# Tolérance sur la somme des probabilités d'une distribution construite
MASS_TOLERANCE = 1e-9

# Tolérance avant renormalisation par make_discrete
RENORMALIZATION_TOLERANCE = 1e-6

# Entrées négatives tolérées (ramenées à 0)
NEGATIVE_CLAMP_TOLERANCE = 1e-12

# Générateur pseudo-aléatoire du dépôt : numpy PCG64 (np.random.default_rng)
RNG_ALGORITHM = 'PCG64'

# Bornes par défaut des tailles de support des balayages aléatoires
DEFAULT_MIN_SUPPORT = 2
DEFAULT_MAX_SUPPORT = 16
