# modules/validation/__init__.py

from modules.validation.validator import AlgebraValidator, CheckResult
