"""
Django settings for the DiagonalThue project.

The project has no database, no views and no templates. It only hosts the diagthue app,
its management commands and its test suite.

Environment variables:
    DIAGTHUE_MAX_PRECISION  maximum ball precision in bits (default 4096, at least 64)
    DIAGTHUE_DIGIT_BUDGET   maximum decimal digits of exact power comparisons (default 10⁶)
    DIAGTHUE_WORKERS        default number of parallel enumeration chunks (default 1)
    DIAGTHUE_DEBUG          1 for debug logging, 0 otherwise (default 0)
"""

import os
import pathlib

from django.core.exceptions import ImproperlyConfigured

import diagthue.settings as diagthue_settings

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = pathlib.Path(__file__).resolve().parent.parent


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise ImproperlyConfigured(f'{name} must be an integer, got {value!r}')


def _env_flag(name: str) -> bool:
    value = os.getenv(name, '0')
    if value not in ('0', '1'):
        raise ImproperlyConfigured(f'{name} must be 0 or 1, got {value!r}')
    return value == '1'


SECRET_KEY = os.getenv('SECRET_KEY', 'diagthue-no-http-surface')

DEBUG = _env_flag('DIAGTHUE_DEBUG')

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'diagthue.apps.DiagThueConfig',
]

MIDDLEWARE = []

DATABASES = {}

TEST_RUNNER = 'django.test.runner.DiscoverRunner'

USE_I18N = False
USE_TZ = True
TIME_ZONE = 'UTC'

# Site settings

try:
    diagthue_settings.init(
        DEBUG,
        max_precision=_env_int('DIAGTHUE_MAX_PRECISION', 4096),
        digit_budget=_env_int('DIAGTHUE_DIGIT_BUDGET', 10 ** 6),
        workers=_env_int('DIAGTHUE_WORKERS', 1),
    )
except ValueError as e:
    raise ImproperlyConfigured(str(e))
