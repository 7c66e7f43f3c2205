"""Tests for the closed-form Lebesgue and Gauss measures."""

import math
from fractions import Fraction

import pytest

from src.exceptions import ValidationError
from src.measures import (
    gauss_density,
    gauss_log_measure,
    gauss_measure,
    lebesgue_measure,
    log_fraction,
)


class TestLebesgue:
    def test_exact(self):
        assert lebesgue_measure(Fraction(1, 4), Fraction(3, 4)) == 0.5

    def test_float(self):
        assert lebesgue_measure(0.1, 0.35) == pytest.approx(0.25)

    def test_empty(self):
        assert lebesgue_measure(Fraction(1, 3), Fraction(1, 3)) == 0.0

    @pytest.mark.parametrize(("lower", "upper"), [(-0.1, 0.5), (0.2, 1.1), (0.6, 0.4)])
    def test_bad_interval(self, lower, upper):
        with pytest.raises(ValidationError):
            lebesgue_measure(lower, upper)


class TestGauss:
    def test_total_mass(self):
        assert gauss_measure(0, 1) == pytest.approx(1.0)

    def test_first_cell(self):
        assert gauss_measure(Fraction(1, 2), 1) == pytest.approx(math.log2(4 / 3))

    def test_density_integrates_to_measure(self):
        steps = 10_000
        width = 0.3 / steps
        riemann = sum(gauss_density(0.2 + (i + 0.5) * width) for i in range(steps)) * width
        assert gauss_measure(0.2, 0.5) == pytest.approx(riemann, rel=1e-8)

    def test_short_interval_keeps_accuracy(self):
        lower = Fraction(1, 3)
        upper = lower + Fraction(1, 10**12)
        expected = 1e-12 / ((1 + 1 / 3) * math.log(2))
        assert gauss_measure(lower, upper) == pytest.approx(expected, rel=1e-9)


class TestLogMeasures:
    def test_log_fraction_far_below_float_range(self):
        assert log_fraction(Fraction(1, 10**400)) == pytest.approx(-400 * math.log(10))

    def test_log_fraction_rejects_zero(self):
        with pytest.raises(ValidationError):
            log_fraction(Fraction(0))

    def test_gauss_log_measure_matches_measure(self):
        lower, upper = Fraction(1, 5), Fraction(2, 7)
        assert gauss_log_measure(lower, upper) == pytest.approx(
            math.log(gauss_measure(lower, upper))
        )

    def test_gauss_log_measure_of_tiny_interval(self):
        lower = Fraction(1, 2)
        upper = lower + Fraction(1, 10**500)
        expected = -500 * math.log(10) - math.log(1.5 * math.log(2))
        assert gauss_log_measure(lower, upper) == pytest.approx(expected)
