"""Tests for the precision budget."""

import math

import pytest

from src.exceptions import BudgetInfeasibleError
from src.interval import check_budget, required_bits
from src.maps import parse_map

RESOLVE = 2.0**-20


class TestRequiredBits:
    def test_base_two(self):
        bits = required_bits([parse_map("timesb:2")], 1000, RESOLVE)
        assert bits == math.ceil(1.25 * (1000 + 20))

    def test_fastest_map_sets_the_rate(self):
        slow = required_bits([parse_map("timesb:2")], 1000, RESOLVE)
        both = required_bits([parse_map("timesb:2"), parse_map("gauss")], 1000, RESOLVE)
        assert both > slow

    def test_gauss_rate(self):
        bits = required_bits([parse_map("gauss")], 10_000, RESOLVE, margin=1.0)
        assert 34_000 < bits < 34_300

    def test_minimum_floor(self):
        assert required_bits([parse_map("timesb:2")], 1, RESOLVE) == 64

    def test_rotation_needs_only_the_floor(self):
        assert required_bits([parse_map("rotation:sqrt2m1")], 10**6, RESOLVE, minimum=80) == 80


class TestCheckBudget:
    def test_within_cap(self):
        assert check_budget([parse_map("timesb:10")], 100, RESOLVE) > 64

    def test_over_cap(self):
        with pytest.raises(BudgetInfeasibleError) as caught:
            check_budget([parse_map("timesb:2")], 10_000, RESOLVE, cap=1000)
        assert caught.value.context["required_bits"] > 1000

    def test_suggested_steps_fit(self):
        with pytest.raises(BudgetInfeasibleError) as caught:
            check_budget([parse_map("timesb:2")], 10_000, RESOLVE, cap=1000)
        suggested = caught.value.context["suggested_steps"]
        assert check_budget([parse_map("timesb:2")], suggested, RESOLVE, cap=1000) <= 1000
