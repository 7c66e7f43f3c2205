"""Tests for map steps, partitions and certified orbits."""

from fractions import Fraction

import pytest

from src.exceptions import StraddleError, ValidationError
from src.interval import EnclosedReal, dyadic, parse_point
from src.maps import (
    OrbitStopReason,
    apply,
    digit,
    digits_needed,
    orbit_digits,
    parse_map,
    partition_cells,
    reconstruct_base_b,
)

BITS = 128


def _make_point(text: str, bits: int = BITS) -> EnclosedReal:
    return parse_point(text, bits)


def _make_half_straddle(bits: int = BITS) -> EnclosedReal:
    # [1/2 - 2^-40, 1/2 + 2^-40]
    return EnclosedReal(
        lower=dyadic(2**39 - 1, -40), upper=dyadic(2**39 + 1, -40), bits=bits
    )


class TestPartitionCells:
    def test_times_b_cells(self):
        cells = partition_cells(parse_map("timesb:3"))
        assert [(cell.exact_lower, cell.exact_upper) for cell in cells] == [
            (Fraction(0), Fraction(1, 3)),
            (Fraction(1, 3), Fraction(2, 3)),
            (Fraction(2, 3), Fraction(1)),
        ]

    def test_beta_last_cell_is_short(self):
        cells = partition_cells(parse_map("beta:2.5"))
        assert cells[-1].exact_lower == Fraction(4, 5)
        assert cells[-1].exact_upper == Fraction(1)

    def test_linear_mod_one_first_cell(self):
        cells = partition_cells(parse_map("linmod1:2.5,0.3"))
        assert cells[0].exact_upper == Fraction(7, 25)

    def test_cells_tile_the_interval(self):
        cells = partition_cells(parse_map("linmod1:2.5,0.6"))
        assert sum(cell.exact_upper - cell.exact_lower for cell in cells) == 1

    def test_gauss_cells_are_left_open(self):
        cells = partition_cells(parse_map("gauss"), limit=3)
        assert cells[1].exact_lower == Fraction(1, 3)
        assert cells[1].exact_upper == Fraction(1, 2)
        assert not cells[1].left_closed
        assert cells[1].right_closed

    def test_gauss_needs_limit(self):
        with pytest.raises(ValidationError):
            partition_cells(parse_map("gauss"))

    def test_rotation_is_trivial(self):
        (cell,) = partition_cells(parse_map("rotation:0.25"))
        assert cell.trivial

    def test_irrational_slope_has_float_endpoints(self):
        cells = partition_cells(parse_map("beta:golden"))
        assert cells[0].exact_upper is None
        assert cells[0].upper == pytest.approx(0.6180339887)


class TestDigit:
    def test_times_ten(self):
        assert digit(parse_map("timesb:10"), _make_point("0.37")) == 3

    def test_gauss(self):
        assert digit(parse_map("gauss"), _make_point("2/7")) == 3

    def test_straddle(self):
        with pytest.raises(StraddleError):
            digit(parse_map("timesb:2"), _make_half_straddle())

    def test_rotation_has_one_symbol(self):
        assert digit(parse_map("rotation:0.25"), _make_point("0.9")) == 0


class TestApply:
    def test_image(self):
        image = apply(parse_map("timesb:2"), _make_point("1/3"))
        assert not image.straddled
        assert image.point.contains(Fraction(2, 3))

    def test_straddle_returns_unit_hull(self):
        image = apply(parse_map("timesb:2"), _make_half_straddle())
        assert image.straddled
        assert image.point.contains(0)
        assert image.point.contains(1)

    def test_linear_mod_one(self):
        image = apply(parse_map("linmod1:2.5,0.3"), _make_point("0.5"))
        assert image.point.contains(Fraction(11, 20))

    def test_rotation_wraps(self):
        image = apply(parse_map("rotation:0.25"), _make_point("0.875"))
        assert image.point.contains(Fraction(1, 8))


class TestOrbitDigits:
    def test_third_in_base_two(self):
        digits = orbit_digits(parse_map("timesb:2"), _make_point("1/3"), 16)
        assert digits.symbols == (0, 1) * 8
        assert digits.complete
        assert digits.stop_reason == OrbitStopReason.COMPLETED

    def test_decimal_digits(self):
        digits = orbit_digits(parse_map("timesb:10"), _make_point("1/7"), 12)
        assert digits.symbols == (1, 4, 2, 8, 5, 7, 1, 4, 2, 8, 5, 7)

    def test_golden_mean_continued_fraction(self):
        digits = orbit_digits(parse_map("gauss"), _make_point("invgolden", 512), 40)
        assert set(digits.symbols) == {1}
        assert digits.valid_length == 40

    def test_precision_exhausted(self):
        digits = orbit_digits(parse_map("timesb:2"), _make_point("1/3", 64), 200)
        assert digits.stop_reason == OrbitStopReason.PRECISION_EXHAUSTED
        assert 30 < digits.valid_length < 64
        assert not digits.complete

    def test_straddle_stops_emission(self):
        digits = orbit_digits(parse_map("timesb:2"), _make_half_straddle(), 5)
        assert digits.stop_reason == OrbitStopReason.STRADDLE
        assert digits.symbols == ()

    def test_gauss_rational_terminates(self):
        digits = orbit_digits(parse_map("gauss"), _make_point("1/2"), 5)
        assert digits.symbols == (2,)
        assert digits.stop_reason == OrbitStopReason.TERMINATED

    def test_gauss_boundary_straddles(self):
        digits = orbit_digits(parse_map("gauss"), _make_point("1/3"), 5)
        assert digits.stop_reason == OrbitStopReason.STRADDLE

    def test_rotation_orbit(self):
        digits = orbit_digits(parse_map("rotation:sqrt2m1"), _make_point("0.1"), 50)
        assert digits.symbols == (0,) * 50

    def test_requested_recorded(self):
        assert orbit_digits(parse_map("timesb:3"), _make_point("0.2"), 7).requested == 7


class TestReconstruct:
    def test_base_two(self):
        assert reconstruct_base_b((0, 1), 2) == (Fraction(1, 4), Fraction(1, 2))

    def test_digits_reconstruct_point(self):
        digits = orbit_digits(parse_map("timesb:10"), _make_point("0.1234567"), 6)
        lower, upper = reconstruct_base_b(digits.symbols, 10)
        assert lower <= Fraction(1234567, 10**7) < upper


class TestDigitsNeeded:
    def test_windows(self):
        assert digits_needed(10, 3) == 12

    def test_zero_pattern_length(self):
        assert digits_needed(10, 0) == 10
