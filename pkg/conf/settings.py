"""
Django settings for the Sorani ATS project.

The project has no web surface; Django provides the settings layer, the
management-command CLI, the ORM used to record experiment runs, and the
test runner.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
"""

import sys
from pathlib import Path

import environs

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

env = environs.Env()
env.read_env(BASE_DIR / ".env")

if "test" in sys.argv:
    env.read_env(BASE_DIR / ".env.testing", override=True)


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = env.str("ATS_SECRET_KEY", default="sorani-ats-development-key")

DEBUG = env.bool("ATS_DEBUG", default=False)

ALLOWED_HOSTS = env.list("ATS_ALLOWED_HOSTS", default=[])


# Application definition

INSTALLED_APPS = [
    "ats",
]

MIDDLEWARE = []


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    "default": env.dj_db_url(
        "DATABASE_URL", default=f"sqlite:///{BASE_DIR / 'ats.sqlite3'}"
    )
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Logging

ATS_LOG_LEVEL = env.str("ATS_LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "ats": {
            "handlers": ["console"],
            "level": ATS_LOG_LEVEL,
        },
    },
}


# Summarization Pipeline

ATS_DATA_DIR = BASE_DIR / "ats" / "data"

ATS_CHARMAP = env.path("ATS_CHARMAP", default=ATS_DATA_DIR / "charmap.txt")
ATS_SUFFIXES = env.path("ATS_SUFFIXES", default=ATS_DATA_DIR / "suffixes.txt")
ATS_STOPWORD_DIR = env.path(
    "ATS_STOPWORD_DIR", default=ATS_DATA_DIR / "domain_stopwords"
)

ATS_WORD_LIMIT = env.int("ATS_WORD_LIMIT", default=182)
ATS_SEED = env.int("ATS_SEED", default=None)
ATS_WORKERS = env.int("ATS_WORKERS", default=1)
ATS_STRICT_DEPARTMENTS = env.bool("ATS_STRICT_DEPARTMENTS", default=True)
