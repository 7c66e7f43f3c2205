"""Tests for map specifications and their closed-form invariants."""

import math
from fractions import Fraction

import pytest

from src.constants import GAUSS_ENTROPY
from src.maps import closed_form_entropy, expansion_exponent, parse_map


class TestAlphabet:
    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("timesb:10", 10),
            ("beta:2.5", 3),
            ("beta:golden", 2),
            ("linmod1:2.5,0.3", 3),
            ("linmod1:2.5,0.6", 4),
            ("rotation:0.25", 1),
        ],
    )
    def test_symbol_count(self, text, expected):
        assert parse_map(text).symbol_count == expected

    def test_gauss_alphabet_is_countable(self):
        spec = parse_map("gauss")
        assert spec.symbol_count is None
        assert spec.first_symbol == 1
        assert spec.symbols(limit=4) == [1, 2, 3, 4]

    def test_has_symbol(self):
        spec = parse_map("timesb:3")
        assert spec.has_symbol(2)
        assert not spec.has_symbol(3)

    def test_gauss_has_large_symbols(self):
        assert parse_map("gauss").has_symbol(10_000)
        assert not parse_map("gauss").has_symbol(0)


class TestParameters:
    def test_exact_slope(self):
        assert parse_map("beta:2.5").slope_fraction() == Fraction(5, 2)

    def test_golden_slope_is_irrational(self):
        spec = parse_map("beta:golden")
        assert spec.slope_fraction() is None
        assert not spec.has_exact_parameters
        assert math.isclose(spec.slope_float(), (1 + math.sqrt(5)) / 2)

    def test_shift(self):
        assert parse_map("linmod1:2.5,0.3").shift_fraction() == Fraction(3, 10)

    def test_golden_rotation_uses_fractional_part(self):
        alpha = parse_map("rotation:golden").alpha_enclosure(128)
        assert math.isclose(alpha.midpoint_float(), (math.sqrt(5) - 1) / 2)

    def test_affine_families(self):
        assert parse_map("linmod1:3,0.5").is_affine
        assert not parse_map("gauss").is_affine

    def test_specs_are_hashable(self):
        assert len({parse_map("timesb:2"), parse_map("timesb:2")}) == 1


class TestClosedFormEntropy:
    def test_times_b(self):
        assert math.isclose(closed_form_entropy(parse_map("timesb:10")).value, math.log(10))

    def test_beta(self):
        assert math.isclose(closed_form_entropy(parse_map("beta:2.5")).value, math.log(2.5))

    def test_gauss(self):
        entropy = closed_form_entropy(parse_map("gauss"))
        assert math.isclose(entropy.value, math.pi**2 / (6 * math.log(2)))
        assert entropy.value == GAUSS_ENTROPY

    def test_rotation(self):
        assert closed_form_entropy(parse_map("rotation:sqrt2m1")).value == 0.0

    def test_carries_map_name(self):
        assert closed_form_entropy(parse_map("linmod1:2.5,0.3")).map_name == "linmod1:2.5,0.3"


class TestExpansionExponent:
    def test_base_two_is_one_bit(self):
        assert expansion_exponent(parse_map("timesb:2")) == 1.0

    def test_gauss_is_twice_levy_rate(self):
        assert math.isclose(expansion_exponent(parse_map("gauss")), GAUSS_ENTROPY / math.log(2))

    def test_rotation_does_not_expand(self):
        assert expansion_exponent(parse_map("rotation:0.3")) == 0.0
