"""Application configuration using Pydantic BaseSettings.

All settings are loaded from environment variables prefixed ``NORMALITY_``.
No .env files - experiment parameters that vary per run belong in the
manifest, not in the environment.

Usage:
    from src.config import get_settings

    settings = get_settings()
    print(settings.max_precision_bits)
    print(settings.gate_sigma)
"""

from enum import StrEnum
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Environment(StrEnum):
    """Valid runtime environments."""

    DEVELOPMENT = "development"
    TESTING = "testing"
    PRODUCTION = "production"


class Settings(BaseSettings):
    """Application settings loaded from environment variables.

    Attributes:
        service_name: Name of this service for logging.
        environment: Runtime environment.
        log_level: Logging level.
        resolve_bits: Digit decisions need enclosure width at most 2^-resolve_bits.
        precision_margin: Safety factor applied by the precision budget.
        minimum_precision_bits: Smallest working precision ever used.
        max_precision_bits: Budget cap; runs needing more are infeasible.
        worker_count: Processes used to fan out seeds (1 runs serially).
        gate_sigma: z-score gate for statistical verdicts.
        outlier_sigma: z-score above which a row counts as an outlier.
        outliers_per_hundred: Allowed outliers per hundred rows.
        min_pass_rate: Fraction of seeds that must pass an aggregate gate.
        density_grid_size: Bins of the invariant density grid.
        density_tolerance: Sup-change stopping rule for power iteration.
        density_max_iterations: Iteration cap for power iteration.
        gauss_branch_cap: Partial quotients summed explicitly in Gauss operators.
        symbol_cap: Gauss digits tracked individually in reports.
        enumeration_cap: Maximum number of cylinders or branches enumerated.
        max_excluded_fraction: Excluded orbit points that invalidate a grid test.
        equidist_confidence: Per-run pass probability of the calibrated grid gate.
        mixing_precision_bits: Working precision of the high-precision mixing route.
        gauss_mixing_branch_cap: Branches summed explicitly before the zeta tail correction.
        gauss_collocation_nodes: Chebyshev nodes of the Gauss operator discretization.
        mixing_tail_tolerance: Largest accepted residual of the corrected Gauss tail.
    """

    model_config = SettingsConfigDict(
        env_prefix="NORMALITY_",
        env_file=None,
        case_sensitive=False,
        extra="ignore",
        str_strip_whitespace=True,
    )

    # Service identification
    service_name: str = Field(default="joint-normality-lab", min_length=1)
    environment: Environment = Field(default=Environment.DEVELOPMENT)

    # Logging
    log_level: str = Field(default="INFO")

    # Precision budget
    resolve_bits: int = Field(default=20, ge=1, le=512)
    precision_margin: float = Field(default=1.25, ge=1.0, le=4.0)
    minimum_precision_bits: int = Field(default=64, ge=64)
    max_precision_bits: int = Field(default=1_000_000, ge=64)

    # Execution
    worker_count: int = Field(default=1, ge=1, le=256)

    # Statistical gates
    gate_sigma: float = Field(default=5.0, gt=0)
    outlier_sigma: float = Field(default=4.0, gt=0)
    outliers_per_hundred: int = Field(default=1, ge=0)
    min_pass_rate: float = Field(default=0.8, ge=0, le=1)

    # Invariant densities
    density_grid_size: int = Field(default=1000, ge=10, le=1_000_000)
    density_tolerance: float = Field(default=1e-10, gt=0)
    density_max_iterations: int = Field(default=10_000, ge=1)

    # Countable partitions and enumeration
    gauss_branch_cap: int = Field(default=64, ge=2)
    symbol_cap: int = Field(default=5, ge=2)
    enumeration_cap: int = Field(default=2_000_000, ge=1)
    max_excluded_fraction: float = Field(default=0.01, ge=0, le=1)
    equidist_confidence: float = Field(default=0.99, gt=0, lt=1)

    # Mixing
    mixing_precision_bits: int = Field(default=256, ge=64)
    gauss_mixing_branch_cap: int = Field(default=1024, ge=16)
    gauss_collocation_nodes: int = Field(default=48, ge=8, le=256)
    mixing_tail_tolerance: float = Field(default=1e-10, gt=0)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, value: str) -> str:
        """Validate log level is one of the allowed values."""
        allowed = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        upper_value = value.upper()
        if upper_value not in allowed:
            error_message = f"log_level must be one of {allowed}, got '{value}'"
            raise ValueError(error_message)
        return upper_value

    @property
    def resolve_width(self) -> float:
        """Largest enclosure width at which a digit decision is accepted."""
        return 2.0**-self.resolve_bits


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance.

    Returns:
        Cached Settings instance.
    """
    return Settings()


def validate_startup_config() -> Settings:
    """Validate configuration on application startup.

    Returns:
        Validated Settings instance.

    Raises:
        pydantic.ValidationError: If configuration is invalid.
    """
    return get_settings()
