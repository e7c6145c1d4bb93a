"""
darkcell/settings.py - Konfiguracja projektu darkcell (symulator fotoogniw z ciemnym stanem).

Projekt nie używa bazy danych: Django dostarcza warstwę ustawień, komendy
zarządzania (CLI) oraz runner testów. Wartości czytane ze zmiennych środowiskowych.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / '.env')

# ---------------------------------------------------------------------------
# Bezpieczeństwo
# ---------------------------------------------------------------------------
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-darkcell-dev-key-change-in-production'
)
DEBUG = os.environ.get('DJANGO_DEBUG', 'False') == 'True'
ALLOWED_HOSTS = []

# ---------------------------------------------------------------------------
# Aplikacje
# ---------------------------------------------------------------------------
INSTALLED_APPS = [
    'core',
    'quantum',
    'steadystate',
    'redfield',
    'screening',
    'runs',
]

# Brak modeli - brak bazy danych
DATABASES = {}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# ---------------------------------------------------------------------------
# Lokalizacja
# ---------------------------------------------------------------------------
LANGUAGE_CODE = 'en'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# ---------------------------------------------------------------------------
# Obliczenia
# ---------------------------------------------------------------------------
# Limit wątków dla sweepów (1 = sekwencyjnie). Wynik nie zależy od tej wartości.
PHOTOCELL_MAX_WORKERS = int(os.environ.get('PHOTOCELL_MAX_WORKERS', '4'))

# Cyfry znaczące w plikach CSV
PHOTOCELL_OUTPUT_DIGITS = int(os.environ.get('PHOTOCELL_OUTPUT_DIGITS', '12'))

# ---------------------------------------------------------------------------
# Logowanie - wszystko na stderr, CSV zostaje czyste
# ---------------------------------------------------------------------------
PHOTOCELL_LOG_LEVEL = os.environ.get('PHOTOCELL_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['stderr'],
            'level': PHOTOCELL_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'quantum', 'steadystate', 'redfield', 'screening', 'runs')
    },
}
