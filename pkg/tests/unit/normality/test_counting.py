"""Tests for sliding and block pattern counts."""

import pytest

from src.exceptions import ValidationError
from src.normality import (
    CountMode,
    FrequencyTable,
    block_counts,
    blocked_symbols,
    count_pattern,
    sliding_counts,
)


class TestCountPattern:
    def test_overlapping(self):
        assert count_pattern((1, 1, 1), (1, 1)) == 2

    def test_alternating(self):
        assert count_pattern((0, 1, 0, 1, 0), (0, 1)) == 2

    def test_absent(self):
        assert count_pattern((0, 1, 0, 1), (1, 1)) == 0

    def test_longer_than_digits(self):
        with pytest.raises(ValidationError):
            count_pattern((0, 1), (0, 1, 0))

    def test_empty_pattern(self):
        with pytest.raises(ValidationError):
            count_pattern((0, 1), ())


class TestSlidingCounts:
    def test_windows(self):
        table = sliding_counts((0, 1, 1, 0, 1), 2)
        assert table.windows == 4
        assert table.count((0, 1)) == 2
        assert table.count((1, 1)) == 1
        assert table.count((0, 0)) == 0

    def test_frequency(self):
        assert sliding_counts((0, 1, 1, 1), 1).frequency((1,)) == 0.75

    def test_too_short(self):
        table = sliding_counts((3,), 2)
        assert table.windows == 0
        assert table.frequency((3, 3)) == 0.0


class TestBlockCounts:
    def test_drops_incomplete_block(self):
        table = block_counts((0, 1, 1, 0, 1), 2)
        assert table.windows == 2
        assert table.counts == {(0, 1): 1, (1, 0): 1}
        assert table.mode == CountMode.BLOCK

    def test_block_length_one_matches_sliding(self):
        digits = (2, 0, 1, 1, 2, 2)
        assert block_counts(digits, 1).counts == sliding_counts(digits, 1).counts

    def test_rejects_zero_length(self):
        with pytest.raises(ValidationError):
            block_counts((0, 1), 0)

    def test_blocked_symbols(self):
        assert blocked_symbols((1, 2, 3, 4, 5), 2) == [(1, 2), (3, 4)]


class TestMerge:
    def test_adds_counts(self):
        merged = sliding_counts((0, 1, 1), 1).merge(sliding_counts((1, 0), 1))
        assert merged.windows == 5
        assert merged.count((1,)) == 3

    def test_empty_is_identity(self):
        table = sliding_counts((0, 1, 1), 2)
        assert FrequencyTable.empty(2).merge(table) == table

    def test_mismatch(self):
        with pytest.raises(ValidationError):
            sliding_counts((0, 1, 1), 1).merge(block_counts((0, 1), 1))
