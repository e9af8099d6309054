"""
Constantes de l'application pac_bayes.
"""
# Régimes de K¹_δ pour les pertes sous-exponentielles
REGIME_GAUSSIAN = 'gaussian'
REGIME_SMALL_M = 'small-m'

# Séparateur des paramètres d'une classe de perte (sub-exponential:1,1)
PARAMETER_LIST_SEPARATOR = ','

# Expérience de couverture par défaut
DEFAULT_HYPOTHESES = 20
DEFAULT_SAMPLE_SIZE = 200
DEFAULT_DELTA = 0.1
DEFAULT_ALPHA = 2.0
DEFAULT_TRIALS = 2000

# Pertes moyennes des hypothèses réparties sur [MEAN_LOSS_LOW, MEAN_LOSS_HIGH]
MEAN_LOSS_LOW = 0.1
MEAN_LOSS_HIGH = 0.9
