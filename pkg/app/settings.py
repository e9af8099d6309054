from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

DEBUG = config('DEBUG', default=True, cast=bool)

# Pas de session, de cookie ni de signature : le projet n'expose que des
# commandes de management, SECRET_KEY n'est donc jamais lue.


# Application definition

INSTALLED_APPS = [
    "app",  # Pour les commandes de management
    "distributions",
    "divergences",
    "change_of_measure",
    "pac_bayes",
    "mc_certify",
]


# Aucune base de données : tous les calculs sont des fonctions pures
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "fr-fr"

TIME_ZONE = "Europe/Paris"

USE_I18N = True

USE_TZ = True


# Paramètres des expériences
# Graine de base des commandes aléatoires (graine d'un essai = base + indice)
CERTIF_SEED = config('CERTIF_SEED', default=0, cast=int)

# Nombre de threads pour la répartition des essais
CERTIF_WORKERS = config('CERTIF_WORKERS', default=1, cast=int)

# Format de sortie par défaut des commandes (json ou csv)
CERTIF_OUTPUT_FORMAT = config('CERTIF_OUTPUT_FORMAT', default='csv')


# Logging configuration
# Créer le dossier logs s'il n'existe pas (nécessaire pour CI/CD)
LOG_DIR = BASE_DIR / 'logs'
LOG_DIR.mkdir(exist_ok=True)

LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': LOG_LEVEL,
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / config('LOG_FILE', default='logs/certif.log'),
            'formatter': 'verbose',
        },
        # StreamHandler écrit sur stderr : stdout reste réservé aux résultats
        'console': {
            'level': config('CONSOLE_LOG_LEVEL', default='WARNING'),
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': True,
        },
        'app': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'distributions': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'divergences': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'change_of_measure': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'pac_bayes': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'mc_certify': {
            'handlers': ['file', 'console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
