"""Scenario test configuration and fixtures."""

import os

import pytest

from src.config import get_settings
from src.logging.context import clear_context

SCENARIO_WORKERS = int(os.environ.get("SCENARIO_WORKERS", "1"))


@pytest.fixture(autouse=True)
def _fresh_settings():
    """Settings are read once per scenario so gate overrides in the environment apply."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    clear_context()


@pytest.fixture(scope="session")
def scenario_workers() -> int:
    """Worker processes for the seed fan-out of statistical scenarios."""
    return SCENARIO_WORKERS
