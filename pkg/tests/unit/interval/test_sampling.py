"""Tests for seeded sample points."""

import pytest
from pydantic import ValidationError

from src.interval import SampleSpec, sample_point, sample_points


class TestSamplePoint:
    def test_same_seed_same_point(self):
        first = sample_point(SampleSpec(seed=7, bits=256))
        second = sample_point(SampleSpec(seed=7, bits=256))
        assert first == second

    def test_different_seeds_differ(self):
        first = sample_point(SampleSpec(seed=1, bits=256))
        second = sample_point(SampleSpec(seed=2, bits=256))
        assert first != second

    def test_width_is_one_cell(self):
        point = sample_point(SampleSpec(seed=3, bits=200))
        assert point.width_float() == 2.0**-200

    def test_inside_unit_interval(self):
        point = sample_point(SampleSpec(seed=11, bits=100))
        assert 0.0 <= point.lower_float() < point.upper_float() <= 1.0

    def test_odd_bit_count(self):
        point = sample_point(SampleSpec(seed=5, bits=67))
        assert point.width_float() == 2.0**-67

    def test_largest_seed(self):
        sample_point(SampleSpec(seed=2**64 - 1, bits=64))


class TestSampleSpec:
    def test_seed_above_64_bits_rejected(self):
        with pytest.raises(ValidationError):
            SampleSpec(seed=2**64, bits=64)

    def test_precision_floor(self):
        with pytest.raises(ValidationError):
            SampleSpec(seed=0, bits=32)


class TestSamplePoints:
    def test_one_per_seed_in_order(self):
        points = sample_points([4, 5, 6], 128)
        assert points == [sample_point(SampleSpec(seed=seed, bits=128)) for seed in (4, 5, 6)]
