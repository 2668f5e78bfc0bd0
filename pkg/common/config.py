"""Run configuration and fixture tolerances."""

import math
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

from .exceptions import ConfigurationError

FIXTURES_PATH = Path(__file__).with_name("fixtures.toml")


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class TauConvention(str, Enum):
    SYMMETRIC = "symmetric"
    DIVISOR = "divisor"


class Settings(BaseSettings):
    """Fully resolved run configuration.

    Precedence: explicit overrides (CLI flags) > TOML config file > environment
    variables prefixed ``KLOOSTER_`` > defaults.
    """

    model_config = SettingsConfigDict(env_prefix="KLOOSTER_", env_file=".env", extra="ignore")

    # Test-function parameters
    X: float = Field(10.0, ge=2.0)
    T: float = Field(4.0, ge=1.0)
    N: float = Field(10.0, gt=1.0)
    THETA: float = Field(1.0 / 6.0, ge=0.0, le=0.25)

    # Truncations
    Q: int = Field(10_000, ge=1)
    QMAX: int = Field(300, ge=1)
    NMAX: Optional[int] = Field(None, ge=1)
    TMAX: float = Field(40.0, gt=0.0)
    V: Optional[float] = Field(None, ge=1.0)

    # Execution
    THREADS: int = Field(1, ge=1)
    DETERMINISTIC: bool = False
    OUT_DIR: Path = Path("reports")
    OUTPUT_FORMAT: OutputFormat = OutputFormat.CSV
    TAU_CONVENTION: TauConvention = TauConvention.SYMMETRIC
    LOG_LEVEL: str = "INFO"

    @field_validator("LOG_LEVEL")
    @classmethod
    def _check_log_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return value

    def resolved_v(self) -> float:
        """V = X^θ(1 + X^{1/2}/T) unless set explicitly."""
        if self.V is not None:
            return self.V
        return self.X**self.THETA * (1.0 + math.sqrt(self.X) / self.T)

    def resolved_nmax(self) -> int:
        """Default n truncation 40·√X."""
        if self.NMAX is not None:
            return self.NMAX
        return int(math.ceil(40.0 * math.sqrt(self.X)))


def load_settings(config_path: Optional[Path] = None, **overrides: Any) -> Settings:
    """Build settings from a TOML file plus explicit overrides.

    Args:
        config_path: Optional TOML file; keys are the ``Settings`` field names.
        **overrides: Values that win over every other source (``None`` is ignored).

    Returns:
        Validated settings.

    Raises:
        ConfigurationError: If the file cannot be read or a value is invalid.
    """
    values: dict[str, Any] = {}
    if config_path is not None:
        if not Path(config_path).is_file():
            raise ConfigurationError(f"config file not found: {config_path}")
        try:
            values.update(TomlConfigSettingsSource(Settings, toml_file=config_path)())
        except Exception as exc:  # tomllib raises its own decode error type
            raise ConfigurationError(f"cannot parse {config_path}: {exc}") from exc
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return Settings(**values)
    except ValidationError as exc:
        raise ConfigurationError(str(exc)) from exc


@lru_cache()
def get_settings() -> Settings:
    return load_settings()


class CheckTolerance(BaseModel):
    """Absolute and relative slack for one identity check."""

    abs: float = Field(0.0, ge=0.0)
    rel: float = Field(0.0, ge=0.0)


class Tolerances(BaseSettings):
    """Versioned tolerances and calibrated constants read from ``fixtures.toml``."""

    model_config = SettingsConfigDict(toml_file=FIXTURES_PATH, extra="ignore")

    version: str
    checks: dict[str, CheckTolerance] = Field(default_factory=dict)
    constants: dict[str, float] = Field(default_factory=dict)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings, TomlConfigSettingsSource(settings_cls))

    def check(self, name: str) -> CheckTolerance:
        if name not in self.checks:
            raise ConfigurationError(f"no tolerance entry for check {name!r}")
        return self.checks[name]

    def constant(self, name: str) -> float:
        if name not in self.constants:
            raise ConfigurationError(f"no calibrated constant {name!r}")
        return self.constants[name]


@lru_cache()
def get_tolerances() -> Tolerances:
    return Tolerances()
