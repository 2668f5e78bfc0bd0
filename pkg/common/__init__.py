from .config import Settings, Tolerances, get_settings, get_tolerances, load_settings
from .exceptions import (
    ConfigurationError,
    ConvergenceError,
    EigenvalueFormatError,
    InvalidArgumentError,
    NumericsError,
    PoleError,
    RegimeError,
)

__all__ = [
    "Settings",
    "Tolerances",
    "get_settings",
    "get_tolerances",
    "load_settings",
    "ConfigurationError",
    "ConvergenceError",
    "EigenvalueFormatError",
    "InvalidArgumentError",
    "NumericsError",
    "PoleError",
    "RegimeError",
]
