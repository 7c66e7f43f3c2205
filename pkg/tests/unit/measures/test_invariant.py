"""Tests for invariant measures, transfer operators and invariance defects."""

import math

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from src.exceptions import UnsupportedMapError
from src.interval import SampleSpec, required_bits, sample_point
from src.maps import iterate_orbit, parse_map
from src.measures import (
    GAUSS,
    LEBESGUE,
    DensityTable,
    MeasureKind,
    MeasureSpec,
    constant_density,
    density_rows,
    gauss_transfer_fixed_point_defect,
    invariance_defect,
    invariant_density,
    inverse_branches,
    measure_for_map,
    measure_of_interval,
    preimage_intervals,
    renyi_bounds,
    transfer_apply,
)

GOLDEN = (1 + math.sqrt(5)) / 2
GRID = 500
ORBIT_LENGTH = 1_000_000
HISTOGRAM_BINS = 100


def _make_golden_density() -> DensityTable:
    return invariant_density(parse_map("beta:golden"), GRID, require_convergence=False)


def _golden_bin_masses(bins: int) -> np.ndarray:
    """Parry measure of each of ``bins`` equal cells: density phi c below 1/phi, c above."""
    low = 1 / (1 + GOLDEN**-2)
    edges = np.linspace(0.0, 1.0, bins + 1)
    below = np.clip(np.minimum(edges[1:], 1 / GOLDEN) - edges[:-1], 0.0, None)
    return GOLDEN * low * below + low * (np.diff(edges) - below)


class TestMeasureForMap:
    @pytest.mark.parametrize("text", ["timesb:10", "rotation:sqrt2m1", "linmod1:3,0.5"])
    def test_lebesgue(self, text):
        assert measure_for_map(parse_map(text)) == LEBESGUE

    def test_gauss(self):
        assert measure_for_map(parse_map("gauss")) == GAUSS

    def test_beta_is_numeric(self):
        measure = measure_for_map(parse_map("beta:2.5"), grid_size=GRID)
        assert measure.kind == MeasureKind.NUMERIC_INVARIANT
        assert measure.label == "invariant[beta:2.5]"

    def test_numeric_needs_affine_map(self):
        table = constant_density(parse_map("timesb:2"), 10)
        with pytest.raises(PydanticValidationError):
            MeasureSpec(kind=MeasureKind.NUMERIC_INVARIANT, map=parse_map("gauss"), density=table)


class TestInvariantDensity:
    def test_golden_parry_density(self):
        table = _make_golden_density()
        low = 1 / (1 + GOLDEN**-2)
        assert table.value_at(0.3) == pytest.approx(GOLDEN * low, abs=0.02)
        assert table.value_at(0.9) == pytest.approx(low, abs=0.02)

    @pytest.mark.slow
    def test_golden_density_matches_an_orbit_histogram(self):
        spec = parse_map("beta:golden")
        resolve = 2.0**-20
        point = sample_point(SampleSpec(seed=7, bits=required_bits([spec], ORBIT_LENGTH, resolve)))
        orbit = iterate_orbit(spec, point, ORBIT_LENGTH, resolve)
        positions = np.fromiter((step.point.midpoint_float() for step in orbit), dtype=float)
        assert len(positions) >= 0.999 * ORBIT_LENGTH
        counts, _ = np.histogram(positions, bins=HISTOGRAM_BINS, range=(0.0, 1.0))
        masses = _golden_bin_masses(HISTOGRAM_BINS)
        frequencies = counts / len(positions)
        assert masses.sum() == pytest.approx(1.0)
        assert np.max(np.abs(frequencies - masses)) < 0.02
        # Per-bin density noise is about 0.01 at this length.
        assert np.max(np.abs(frequencies - masses)) * HISTOGRAM_BINS < 0.06
        table = invariant_density(spec, HISTOGRAM_BINS, require_convergence=False)
        assert abs(table.value_at(0.3) - counts[30] / len(positions) * HISTOGRAM_BINS) < 0.06

    def test_normalized(self):
        assert _make_golden_density().integral(0.0, 1.0) == pytest.approx(1.0)

    def test_within_renyi_envelope(self):
        table = _make_golden_density()
        assert table.renyi_lower == pytest.approx(1 - 1 / GOLDEN)
        assert table.within_renyi_bounds

    def test_no_envelope_with_offset(self):
        assert renyi_bounds(parse_map("linmod1:2.5,0.3")) is None

    def test_integer_slope_is_uniform(self):
        table = invariant_density(parse_map("timesb:3"), 90)
        assert table.lower_bound == pytest.approx(1.0)
        assert table.upper_bound == pytest.approx(1.0)

    def test_length_checked(self):
        with pytest.raises(PydanticValidationError):
            DensityTable(map_name="beta:2.5", grid_size=4, values=(1.0, 1.0))


class TestTransferOperator:
    def test_preserves_mass(self):
        spec = parse_map("linmod1:2.5,0.3")
        image = transfer_apply(spec, constant_density(spec, 200))
        assert sum(image.values) / 200 == pytest.approx(1.0, abs=1e-12)
        assert image.iterations == 1

    def test_branches_of_beta(self):
        branches = inverse_branches(parse_map("beta:2.5"))
        assert [branch.symbol for branch in branches] == [0, 1, 2]
        assert branches[-1].image_upper == pytest.approx(0.5)

    def test_gauss_has_no_affine_branches(self):
        with pytest.raises(UnsupportedMapError):
            inverse_branches(parse_map("gauss"))

    def test_gauss_fixed_point(self):
        check = gauss_transfer_fixed_point_defect(branch_cap=200)
        assert check.within_tail_bound
        assert check.tail_bound < 1 / (200 * math.log(2))


class TestInvarianceDefect:
    def test_times_b_lebesgue(self):
        assert invariance_defect(parse_map("timesb:3"), LEBESGUE, 0.2, 0.5) < 1e-15

    def test_gauss_measure(self):
        assert invariance_defect(parse_map("gauss"), GAUSS, 0.2, 0.5, branch_cap=2000) < 1e-3

    def test_rotation_lebesgue(self):
        assert invariance_defect(parse_map("rotation:0.25"), LEBESGUE, 0.1, 0.3) < 1e-15

    def test_numeric_beta(self):
        spec = parse_map("beta:2.5")
        measure = measure_for_map(spec, grid_size=GRID)
        assert invariance_defect(spec, measure, 0.1, 0.6) < 0.01

    def test_lebesgue_is_not_invariant_for_beta(self):
        assert invariance_defect(parse_map("beta:golden"), LEBESGUE, 0.7, 1.0) > 0.05


class TestPreimages:
    def test_rotation_wraps(self):
        pieces = preimage_intervals(parse_map("rotation:0.25"), 0.1, 0.3)
        assert pieces == [(0.0, pytest.approx(0.05)), (pytest.approx(0.85), 1.0)]

    def test_times_two(self):
        pieces = preimage_intervals(parse_map("timesb:2"), 0.2, 0.6)
        assert pieces == [pytest.approx((0.1, 0.3)), pytest.approx((0.6, 0.8))]


class TestMeasureOfInterval:
    def test_numeric_matches_table(self):
        spec = parse_map("beta:golden")
        measure = measure_for_map(spec, grid_size=GRID)
        assert measure_of_interval(measure, 0.0, 1.0) == pytest.approx(1.0)


class TestDensityRows:
    def test_one_row_per_bin(self):
        rows = density_rows(constant_density(parse_map("beta:2.5"), 4))
        assert len(rows) == 4
        assert rows[-1] == {"bin_lower": 0.75, "bin_upper": 1.0, "density": 1.0}
