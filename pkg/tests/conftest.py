"""Shared test fixtures."""

import pytest

from src.config import get_settings
from src.logging.config import get_logging_config
from src.logging.context import clear_context


@pytest.fixture(autouse=True)
def _clear_environment(monkeypatch):
    """Clear environment variables that affect settings."""
    env_vars_to_clear = [
        "NORMALITY_SERVICE_NAME",
        "NORMALITY_ENVIRONMENT",
        "NORMALITY_LOG_LEVEL",
        "NORMALITY_RESOLVE_BITS",
        "NORMALITY_PRECISION_MARGIN",
        "NORMALITY_MINIMUM_PRECISION_BITS",
        "NORMALITY_MAX_PRECISION_BITS",
        "NORMALITY_WORKER_COUNT",
        "NORMALITY_GATE_SIGMA",
        "NORMALITY_OUTLIER_SIGMA",
        "NORMALITY_OUTLIERS_PER_HUNDRED",
        "NORMALITY_MIN_PASS_RATE",
        "NORMALITY_DENSITY_GRID_SIZE",
        "NORMALITY_DENSITY_TOLERANCE",
        "NORMALITY_DENSITY_MAX_ITERATIONS",
        "NORMALITY_GAUSS_BRANCH_CAP",
        "NORMALITY_SYMBOL_CAP",
        "NORMALITY_ENUMERATION_CAP",
        "NORMALITY_MAX_EXCLUDED_FRACTION",
        "NORMALITY_MIXING_PRECISION_BITS",
        "NORMALITY_GAUSS_MIXING_BRANCH_CAP",
        "NORMALITY_GAUSS_COLLOCATION_NODES",
        "NORMALITY_MIXING_TAIL_TOLERANCE",
        "LOG_LEVEL",
        "LOG_FORMAT",
    ]
    for var in env_vars_to_clear:
        monkeypatch.delenv(var, raising=False)
    get_settings.cache_clear()
    get_logging_config.cache_clear()
    yield
    get_settings.cache_clear()
    clear_context()
