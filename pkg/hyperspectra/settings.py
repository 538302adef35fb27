from pathlib import Path
from decouple import config, Csv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-hyperspectra-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=Csv())

# Application definition
DJANGO_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
]

THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'apps.hypercore',
    'apps.families',
    'apps.spectral',
    'apps.grafts',
    'apps.extremal',
    'apps.cli',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# No HTTP surface; management commands are the only entry point.
MIDDLEWARE = []

# Database (unused by the toolkit itself; kept so stock tooling works)
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('DB_NAME', default=str(BASE_DIR / 'db.sqlite3')),
    }
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework: serializers only, no views
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COERCE_DECIMAL_TO_STRING': False,
}

# Celery configuration: sweeps fan out per grid point
CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='memory://')
CELERY_RESULT_BACKEND = config('CELERY_RESULT_BACKEND', default='cache+memory://')
CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=True, cast=bool)
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE

# Numerics
SPECTRAL_TOLERANCE = config('SPECTRAL_TOLERANCE', default=1e-12, cast=float)
SPECTRAL_MAX_ITER = config('SPECTRAL_MAX_ITER', default=1000000, cast=int)
IDENTITY_TOLERANCE = config('IDENTITY_TOLERANCE', default=1e-10, cast=float)
STRICT_GAP = config('STRICT_GAP', default=1e-9, cast=float)
ZERO_BAND = config('ZERO_BAND', default=1e-11, cast=float)
ARGMAX_TOLERANCE = config('ARGMAX_TOLERANCE', default=1e-9, cast=float)
PUBLISHED_VALUE_TOLERANCE = config('PUBLISHED_VALUE_TOLERANCE', default=0.01, cast=float)

# Enumeration budget: "k:max_edges" pairs
ENUMERATION_MAX_EDGES = {
    int(k): int(m)
    for k, m in (
        item.split(':') for item in config('ENUMERATION_MAX_EDGES', default='2:14,3:10,4:8', cast=Csv())
    )
}
CANONICAL_BRUTE_FORCE_LIMIT = config('CANONICAL_BRUTE_FORCE_LIMIT', default=8, cast=int)

# Reports
REPORT_SIGNIFICANT_DIGITS = config('REPORT_SIGNIFICANT_DIGITS', default=12, cast=int)
TOOL_VERSION = '1.0.0'

# Logging
LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'celery': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}
