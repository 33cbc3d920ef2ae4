import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'subspace-lab-local')
DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'
ALLOWED_HOSTS = [host for host in os.getenv('ALLOWED_HOSTS', '').split(',') if host]

INSTALLED_APPS = [
    'subspace_codes',
]

DATABASES = {
    'default': {
        'ENGINE': os.getenv('DB_ENGINE', 'django.db.backends.sqlite3'),
        'NAME': os.getenv('DB_NAME', str(BASE_DIR / 'subspace_lab.sqlite3')),
    }
}

# Computation defaults read by the management commands
SUBSPACE_THREADS = int(os.getenv('SUBSPACE_THREADS', '1'))
SUBSPACE_TIME_LIMIT = float(os.getenv('SUBSPACE_TIME_LIMIT', '600'))
SUBSPACE_GROUP_CAP = int(os.getenv('SUBSPACE_GROUP_CAP', '1000000'))
SUBSPACE_OUTPUT_DIR = Path(os.getenv('SUBSPACE_OUTPUT_DIR', BASE_DIR / 'artifacts'))

LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'subspace_codes': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
