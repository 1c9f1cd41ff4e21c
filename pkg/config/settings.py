"""
Django settings for the chipcarbon project.
Probabilistic lifecycle carbon estimation for processors, driven from the CLI.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load environment variables
load_dotenv(BASE_DIR / '.env')

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-change-me')

DEBUG = os.getenv('DEBUG', 'False').lower() in ('true', '1', 'yes')

# Application definition
INSTALLED_APPS = [
    # Third-party apps
    'rest_framework',

    # Local apps
    'apps.core',
    'apps.carbon',
    'apps.stochastic',
    'apps.dataset',
    'apps.metrics',
    'apps.analyses',
]

# No persistence layer: inputs and reports are plain files.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# REST Framework Configuration (serializers only, no views)
REST_FRAMEWORK = {
    'NON_FIELD_ERRORS_KEY': 'non_field_errors',
    'COERCE_DECIMAL_TO_STRING': False,
}

REFERENCE_DATA_DIR = BASE_DIR / 'data' / 'reference'

# Carbon estimation configuration
CARBON = {
    'VERSION': '1.0.0',
    'DEFAULT_SEED': int(os.getenv('CARBON_SEED', 42)),
    'DEFAULT_SAMPLES': int(os.getenv('CARBON_SAMPLES', 10000)),
    'WORKERS': int(os.getenv('CARBON_WORKERS', 1)),
    # Part of the determinism contract: changing it changes every sample.
    'CHUNK_SIZE': 1024,
    'DATASET_PATH': Path(os.getenv(
        'CARBON_DATASET_PATH', REFERENCE_DATA_DIR / 'processors.csv'
    )),
    'PACK_PATH': Path(os.getenv(
        'CARBON_PACK_PATH', REFERENCE_DATA_DIR / 'pack.json'
    )),
    'REVENUE_PATH': Path(os.getenv(
        'CARBON_REVENUE_PATH', REFERENCE_DATA_DIR / 'revenue.csv'
    )),
    'OUTPUT_DIR': Path(os.getenv('CARBON_OUTPUT_DIR', BASE_DIR / 'reports')),
}

# Logging Configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
        'apps': {
            'handlers': ['console'],
            'level': os.getenv('CARBON_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
