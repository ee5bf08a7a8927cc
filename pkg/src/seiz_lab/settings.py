"""
Django settings for seiz_lab project.

The project has no web surface: Django provides settings, the ORM for the
run log, the management-command CLI and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-seiz-lab-local-only')

DEBUG = os.getenv('DEBUG', 'True') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    # Local apps
    'core',
    'dynamics',
    'analysis',
    'integrator',
    'optimal_control',
    'simulations',
]


# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': os.getenv('DB_ENGINE', 'django.db.backends.sqlite3'),
        'NAME': os.getenv('DB_NAME', str(BASE_DIR / 'seiz_lab.sqlite3')),
    }
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging

LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
}


# SEIZ lab

SEIZ_OUTPUT_DIR = os.getenv('SEIZ_OUTPUT_DIR', str(Path.cwd() / 'runs'))
SEIZ_RECORD_RUNS = os.getenv('SEIZ_RECORD_RUNS', 'True') == 'True'
SEIZ_SWEEP_TIMEOUT = int(os.getenv('SEIZ_SWEEP_TIMEOUT', '600'))

SEIZ_DEFAULTS = {
    'h': 0.01,
    'tf_uncontrolled': 100.0,
    'tf_controlled': 25.0,
    'spreader_seed': 0.01,
    'weight_a': 1.0,
    'weight_b': 1.0,
    'weight_c': 1.0,
    'relaxation': 0.5,
    'tol': 1e-3,
    'max_iter': 200,
    'clamp_threshold': 1e-12,
    'stability_tol': 1e-9,
    'endemic_tol': 1e-8,
}


# Celery Configuration
CELERY_BROKER_URL = os.getenv('CELERY_BROKER_URL', 'redis://redis:6379/0')
CELERY_RESULT_BACKEND = os.getenv('CELERY_RESULT_BACKEND', 'redis://redis:6379/0')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 30 * 60
CELERY_TASK_SOFT_TIME_LIMIT = 25 * 60
CELERY_WORKER_PREFETCH_MULTIPLIER = 1
CELERY_TASK_ACKS_LATE = True
CELERY_WORKER_CONCURRENCY = 4
CELERY_TASK_ALWAYS_EAGER = os.getenv('CELERY_TASK_ALWAYS_EAGER', str(DEBUG)) == 'True'
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_RESULT_EXPIRES = 3600
CELERY_TASK_DEFAULT_QUEUE = 'default'
CELERY_TASK_ROUTES = {
    'simulations.tasks.simulate_sweep_value': {'queue': 'sweeps'},
}
