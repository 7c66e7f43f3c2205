"""Tests for application configuration."""

import pytest
from pydantic import ValidationError

from src.config import Environment, Settings, get_settings, validate_startup_config


class TestEnvironmentEnum:
    def test_development_value(self):
        assert Environment.DEVELOPMENT.value == "development"

    def test_testing_value(self):
        assert Environment.TESTING.value == "testing"

    def test_production_value(self):
        assert Environment.PRODUCTION.value == "production"


class TestSettingsDefaults:
    def test_default_service_name(self):
        assert Settings().service_name == "joint-normality-lab"

    def test_default_environment(self):
        assert Settings().environment == Environment.DEVELOPMENT

    def test_default_log_level(self):
        assert Settings().log_level == "INFO"

    def test_default_precision_budget(self):
        settings = Settings()
        assert settings.resolve_bits == 20
        assert settings.precision_margin == 1.25
        assert settings.minimum_precision_bits == 64
        assert settings.max_precision_bits == 1_000_000

    def test_default_gates(self):
        settings = Settings()
        assert settings.gate_sigma == 5.0
        assert settings.outlier_sigma == 4.0
        assert settings.outliers_per_hundred == 1
        assert settings.min_pass_rate == 0.8

    def test_default_density(self):
        settings = Settings()
        assert settings.density_grid_size == 1000
        assert settings.density_tolerance == 1e-10

    def test_default_worker_count(self):
        assert Settings().worker_count == 1

    def test_resolve_width(self):
        assert Settings().resolve_width == 2.0**-20


class TestSettingsFromEnvironment:
    def test_custom_gate_sigma(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_GATE_SIGMA", "3.5")
        assert Settings().gate_sigma == 3.5

    def test_custom_environment(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_ENVIRONMENT", "production")
        assert Settings().environment == Environment.PRODUCTION

    def test_unprefixed_variable_ignored(self, monkeypatch):
        monkeypatch.setenv("GATE_SIGMA", "2.0")
        assert Settings().gate_sigma == 5.0

    def test_custom_resolve_bits_changes_width(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_RESOLVE_BITS", "30")
        assert Settings().resolve_width == 2.0**-30

    def test_workers(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_WORKER_COUNT", "8")
        assert Settings().worker_count == 8


class TestSettingsValidation:
    def test_log_level_upper_cased(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_LOG_LEVEL", "debug")
        assert Settings().log_level == "DEBUG"

    def test_invalid_log_level(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_LOG_LEVEL", "VERBOSE")
        with pytest.raises(ValidationError):
            Settings()

    def test_minimum_precision_floor(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_MINIMUM_PRECISION_BITS", "32")
        with pytest.raises(ValidationError):
            Settings()

    def test_margin_below_one_rejected(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_PRECISION_MARGIN", "0.9")
        with pytest.raises(ValidationError):
            Settings()

    def test_pass_rate_above_one_rejected(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_MIN_PASS_RATE", "1.5")
        with pytest.raises(ValidationError):
            Settings()

    def test_grid_size_floor(self, monkeypatch):
        monkeypatch.setenv("NORMALITY_DENSITY_GRID_SIZE", "5")
        with pytest.raises(ValidationError):
            Settings()


class TestGetSettings:
    def test_returns_settings(self):
        assert isinstance(get_settings(), Settings)

    def test_cached(self):
        assert get_settings() is get_settings()

    def test_cache_clear_picks_up_environment(self, monkeypatch):
        get_settings()
        monkeypatch.setenv("NORMALITY_SYMBOL_CAP", "9")
        get_settings.cache_clear()
        assert get_settings().symbol_cap == 9


class TestValidateStartupConfig:
    def test_returns_settings(self):
        assert isinstance(validate_startup_config(), Settings)
