"""Tests for correlation series and their routes."""

from fractions import Fraction
from itertools import pairwise

import mpmath
import numpy as np
import pytest

from src.entropy_mixing import (
    AffineTransfer,
    FitStatus,
    MixingRoute,
    PiecewiseConstant,
    default_route,
    gauss_collocation,
    mixing_correlation,
    piecewise_fixed_point,
    working_context,
)
from src.exceptions import (
    EnumerationLimitError,
    TailBoundError,
    UnsupportedMapError,
    ValidationError,
)
from src.maps import parse_map

HALF = Fraction(1, 2)
GOLDEN_LOW_DENSITY = (1 + 5**0.5) / 2 / (2 - 2 / (1 + 5**0.5))


class TestDefaultRoute:
    @pytest.mark.parametrize(
        "text,route",
        [
            ("gauss", MixingRoute.GAUSS_SPECTRAL),
            ("timesb:3", MixingRoute.EXACT),
            ("linmod1:3,0.5", MixingRoute.EXACT),
            ("beta:2.5", MixingRoute.HIGH_PRECISION),
            ("beta:golden", MixingRoute.HIGH_PRECISION),
        ],
    )
    def test_route_by_map(self, text, route):
        assert default_route(parse_map(text)) == route

    def test_rotation_has_no_route(self):
        with pytest.raises(UnsupportedMapError):
            default_route(parse_map("rotation:sqrt2m1"))


class TestExactRoute:
    def test_doubling_map_decorrelates_at_once(self):
        report = mixing_correlation(parse_map("timesb:2"), (0,), Fraction(0), HALF, range(10))
        assert report.route == MixingRoute.EXACT
        assert all(point.value == 0.0 for point in report.series)
        assert report.fit.status == FitStatus.EXACT_ZERO
        assert report.fit.summable
        assert report.cylinder_length == 0.5
        assert report.decreasing_from is None

    def test_non_dyadic_target_is_also_exact_zero(self):
        report = mixing_correlation(
            parse_map("timesb:3"), (1,), Fraction(0), Fraction(3, 10), range(6)
        )
        assert report.fit.status == FitStatus.EXACT_ZERO

    def test_shifted_map_decays_at_one_third(self):
        report = mixing_correlation(parse_map("linmod1:3,0.5"), (0,), Fraction(0), HALF, range(16))
        assert report.series[0].value == pytest.approx(1 / 12)
        assert report.series[1].value == pytest.approx(1 / 36)
        assert report.fit.status == FitStatus.EXPONENTIAL
        assert report.fit.rate == pytest.approx(1 / 3)
        assert report.fit.summable
        assert report.partial_sums[-1] == pytest.approx(1 / 8, rel=1e-6)
        assert report.decreasing_from == 0

    def test_requires_integer_slope(self):
        with pytest.raises(UnsupportedMapError):
            mixing_correlation(
                parse_map("beta:2.5"), (0,), Fraction(0), HALF, range(4), route=MixingRoute.EXACT
            )


class TestHighPrecisionRoute:
    def test_golden_map_decays_exponentially(self):
        report = mixing_correlation(parse_map("beta:golden"), (0,), Fraction(0), HALF, range(20))
        assert report.route == MixingRoute.HIGH_PRECISION
        assert report.target_measure == pytest.approx(GOLDEN_LOW_DENSITY / 2, abs=1e-9)
        assert report.fit.status == FitStatus.EXPONENTIAL
        assert 0.3 < report.fit.rate < 0.45
        assert report.fit.noise_floor == pytest.approx(2.0**-128)

    def test_golden_map_strictly_decreasing_beyond_three(self):
        report = mixing_correlation(parse_map("beta:golden"), (0,), Fraction(0), HALF, range(20))
        assert all(later.value < earlier.value for earlier, later in pairwise(report.series[3:]))
        assert report.decreasing_from is not None
        assert report.decreasing_from <= 3


class TestGridRoute:
    def test_doubling_map_on_a_grid(self):
        report = mixing_correlation(
            parse_map("timesb:2"),
            (0,),
            Fraction(0),
            HALF,
            range(5),
            route=MixingRoute.GRID,
            grid_size=100,
        )
        assert report.route == MixingRoute.GRID
        assert max(point.value for point in report.series) < 1e-9
        assert report.fit.noise_floor == pytest.approx(0.01)


class TestGaussRoute:
    def test_decay_near_the_second_eigenvalue(self):
        report = mixing_correlation(parse_map("gauss"), (1,), Fraction(0), HALF, range(13))
        assert report.route == MixingRoute.GAUSS_SPECTRAL
        assert report.cylinder_length == pytest.approx(0.5)
        assert report.target_measure == pytest.approx(np.log2(1.5))
        assert report.fit.status == FitStatus.EXPONENTIAL
        assert 0.25 < report.fit.rate < 0.36
        assert report.residual is not None
        assert report.residual <= 1e-10
        assert report.tail_bound is not None

    def test_strictly_decreasing_beyond_three(self):
        report = mixing_correlation(parse_map("gauss"), (1,), Fraction(0), HALF, range(13))
        assert all(later.value < earlier.value for earlier, later in pairwise(report.series[3:]))
        assert report.decreasing_from is not None
        assert report.decreasing_from <= 3

    def test_error_grows_with_the_lag(self):
        short = mixing_correlation(parse_map("gauss"), (1,), Fraction(0), HALF, range(6))
        long = mixing_correlation(parse_map("gauss"), (1,), Fraction(0), HALF, range(13))
        assert 0 < short.residual < long.residual

    def test_tight_tolerance_raises(self):
        with pytest.raises(TailBoundError):
            mixing_correlation(
                parse_map("gauss"), (1,), Fraction(0), HALF, range(4), tail_tolerance=1e-30
            )

    def test_spectral_route_needs_the_gauss_map(self):
        with pytest.raises(UnsupportedMapError):
            mixing_correlation(
                parse_map("timesb:2"),
                (0,),
                Fraction(0),
                HALF,
                range(4),
                route=MixingRoute.GAUSS_SPECTRAL,
            )


class TestMixingInputs:
    @pytest.mark.parametrize(
        "lower,upper", [(Fraction(1, 2), Fraction(1, 2)), (Fraction(-1, 4), HALF)]
    )
    def test_bad_target(self, lower, upper):
        with pytest.raises(ValidationError):
            mixing_correlation(parse_map("timesb:2"), (0,), lower, upper, range(4))

    def test_empty_cylinder(self):
        with pytest.raises(ValidationError):
            mixing_correlation(parse_map("timesb:2"), (), Fraction(0), HALF, range(4))

    def test_empty_lags(self):
        with pytest.raises(ValidationError):
            mixing_correlation(parse_map("timesb:2"), (0,), Fraction(0), HALF, [])


class TestPiecewise:
    def test_indicator_integral(self):
        function = PiecewiseConstant.indicator(Fraction(1, 4), HALF, Fraction(0), Fraction(1))
        assert function.integral(Fraction(0), Fraction(1)) == Fraction(1, 4)
        assert function.value_at(Fraction(3, 8)) == 1
        assert function.value_at(HALF) == 0

    def test_doubling_transfer_of_half_indicator(self):
        transfer = AffineTransfer.for_map(parse_map("timesb:2"))
        image = transfer.apply(transfer.indicator(Fraction(0), HALF))
        assert image.values == (HALF,)

    def test_exact_fixed_point_of_times_three(self):
        transfer = AffineTransfer.for_map(parse_map("timesb:3"))
        assert piecewise_fixed_point(transfer).values == (Fraction(1),)

    def test_empty_cylinder_bounds(self):
        transfer = AffineTransfer.for_map(parse_map("beta:1.5"))
        with pytest.raises(ValidationError):
            transfer.cylinder_bounds((1, 1))

    def test_irrational_slope_needs_a_context(self):
        with pytest.raises(UnsupportedMapError):
            AffineTransfer.for_map(parse_map("beta:golden"))
        transfer = AffineTransfer.for_map(parse_map("beta:golden"), working_context(128))
        assert len(transfer.branches) == 2


class TestGaussCollocation:
    def test_gauss_density_is_fixed(self):
        operator = gauss_collocation(32, 512)
        density = 1.0 / ((1.0 + operator.nodes) * np.log(2.0))
        assert np.max(np.abs(operator.apply(density) - density)) < 1e-8
        assert operator.integral(density, 0.0, 1.0) == pytest.approx(1.0, abs=1e-10)

    def test_tail_mass_shrinks_with_more_branches(self):
        assert gauss_collocation(16, 64).tail_mass > gauss_collocation(16, 256).tail_mass

    def test_remainder_bound_of_a_cubic(self):
        operator = gauss_collocation(16, 64)
        cubic = np.polynomial.chebyshev.chebval(2.0 * operator.nodes - 1.0, [0, 0, 0, 1])
        expected = 8 * 24 / 6 * float(mpmath.zeta(5, 65))
        assert operator.remainder_bound(cubic) == pytest.approx(expected, rel=1e-6)

    def test_remainder_bound_shrinks_with_more_branches(self):
        few, many = gauss_collocation(16, 64), gauss_collocation(16, 256)
        values = 1.0 / (1.0 + few.nodes)
        assert many.remainder_bound(values) < few.remainder_bound(values)

    def test_density_step_error_is_small(self):
        operator = gauss_collocation(48, 1024)
        density = 1.0 / ((1.0 + operator.nodes) * np.log(2.0))
        assert operator.step_error(density, operator.apply(density)) < 1e-10


def _gauss_preimage(lags, **kwargs):
    return mixing_correlation(
        parse_map("gauss"),
        (1,),
        Fraction(0),
        HALF,
        lags,
        route=MixingRoute.GAUSS_PREIMAGE,
        branch_cap=kwargs.pop("branch_cap", 50),
        **kwargs,
    )


class TestGaussPreimageRoute:
    def test_lag_zero_is_exact(self):
        report = _gauss_preimage([0])
        assert report.tail_bound == 0.0
        assert report.residual == 0.0
        assert report.series[0].value == pytest.approx(1 / 3 - 0.5 * np.log2(1.5), abs=1e-12)

    def test_first_lag_omits_one_cylinder(self):
        report = _gauss_preimage([1], tail_tolerance=0.05)
        assert report.tail_bound == pytest.approx(1 / 52, abs=1e-15)
        assert report.tail_bound <= float(mpmath.zeta(2, 51))
        assert report.residual == pytest.approx(report.tail_bound / 2)

    @pytest.mark.parametrize("lag", [1, 2])
    def test_omitted_mass_per_level(self, lag):
        report = _gauss_preimage([lag], tail_tolerance=0.05)
        assert 0 < report.tail_bound <= lag / 51

    @pytest.mark.parametrize("lag", [1, 2])
    def test_agrees_with_spectral_route(self, lag):
        exact = _gauss_preimage([lag], tail_tolerance=0.05)
        spectral = mixing_correlation(parse_map("gauss"), (1,), Fraction(0), HALF, [lag])
        difference = abs(exact.series[0].value - spectral.series[0].value)
        assert difference <= exact.residual + 1e-9

    def test_default_tolerance_raises(self):
        with pytest.raises(TailBoundError):
            _gauss_preimage([1])

    def test_enumeration_cap(self):
        with pytest.raises(EnumerationLimitError):
            _gauss_preimage([3], branch_cap=1000, tail_tolerance=0.5)

    def test_needs_the_gauss_map(self):
        with pytest.raises(UnsupportedMapError):
            mixing_correlation(
                parse_map("timesb:2"),
                (0,),
                Fraction(0),
                HALF,
                [1],
                route=MixingRoute.GAUSS_PREIMAGE,
            )
