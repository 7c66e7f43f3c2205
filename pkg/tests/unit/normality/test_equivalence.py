"""Tests for the equivalence suites."""

import pytest

from src.exceptions import ValidationError
from src.interval import EnclosedReal, SampleSpec, parse_point, required_bits, sample_point
from src.maps import parse_map
from src.normality import (
    EquivalenceForm,
    equivalence_suite,
    joint_equivalence_suite,
    joint_suite_digit_count,
    suite_digit_count,
)
from src.types import Verdict

RESOLVE = 2.0**-20


def _make_point(maps: list[str], steps: int, seed: int = 1) -> EnclosedReal:
    bits = required_bits([parse_map(text) for text in maps], steps, RESOLVE)
    return sample_point(SampleSpec(seed=seed, bits=bits))


class TestDigitCounts:
    def test_single_map_defaults(self):
        # power map T^3 reads 3 * 2 digits per window, plus three shifts
        assert suite_digit_count(1000) == 1009

    def test_joint_defaults(self):
        assert joint_suite_digit_count(1000) == 1004


class TestEquivalenceSuite:
    def test_third_fails_every_form(self):
        report = equivalence_suite(parse_point("1/3", 1400), parse_map("timesb:2"), 1000)
        assert [result.form for result in report.forms] == list(EquivalenceForm)
        for result in report.forms:
            assert result.verdict == Verdict.FAIL
        assert report.consistent

    def test_form_checks(self):
        report = equivalence_suite(
            parse_point("1/3", 1400),
            parse_map("timesb:2"),
            1000,
            forms=[EquivalenceForm.SHIFTED_BLOCKS],
        )
        (result,) = report.forms
        assert len(result.checks) == 4 * 4
        assert result.checks[0].label == "s=0 m=1"
        assert result.checks[0].verdict == Verdict.PASS

    def test_sampled_point_passes_block_forms(self):
        spec = parse_map("timesb:2")
        point = _make_point(["timesb:2"], suite_digit_count(4000))
        report = equivalence_suite(
            point,
            spec,
            4000,
            forms=[EquivalenceForm.BLOCKS, EquivalenceForm.BLOCK_SUBSEQUENCE],
        )
        assert report.verdict_of(EquivalenceForm.BLOCKS) == Verdict.PASS
        assert report.verdict_of(EquivalenceForm.BLOCK_SUBSEQUENCE) == Verdict.PASS
        assert report.verdict_of(EquivalenceForm.POWER_MAP) == Verdict.NOT_APPLICABLE
        assert report.consistent

    def test_oversized_checks_are_skipped(self):
        report = equivalence_suite(
            parse_point("1/3", 1400),
            parse_map("timesb:10"),
            100,
            forms=[EquivalenceForm.BLOCKS],
            block_lengths=(4,),
        )
        assert report.forms[0].verdict == Verdict.NOT_APPLICABLE

    def test_rejects_empty_lengths(self):
        with pytest.raises(ValidationError):
            equivalence_suite(parse_point("1/3", 128), parse_map("timesb:2"), 10, power_lengths=())


class TestJointEquivalenceSuite:
    def test_dependent_bases_fail(self):
        maps = [parse_map("timesb:2"), parse_map("timesb:4")]
        point = _make_point(["timesb:4"], joint_suite_digit_count(2000))
        report = joint_equivalence_suite(
            point, maps, 2000, forms=[EquivalenceForm.SLIDING, EquivalenceForm.BLOCKS]
        )
        assert report.verdict_of(EquivalenceForm.SLIDING) == Verdict.FAIL
        assert report.verdict_of(EquivalenceForm.BLOCKS) == Verdict.FAIL
        assert report.map_names == ["timesb:2", "timesb:4"]

    def test_independent_bases_pass(self):
        maps = [parse_map("timesb:2"), parse_map("timesb:3")]
        point = _make_point(["timesb:3"], joint_suite_digit_count(3000), seed=7)
        report = joint_equivalence_suite(
            point, maps, 3000, forms=[EquivalenceForm.SLIDING, EquivalenceForm.BLOCKS]
        )
        assert report.verdict_of(EquivalenceForm.SLIDING) == Verdict.PASS
        assert report.verdict_of(EquivalenceForm.BLOCKS) == Verdict.PASS
        assert report.consistent

    def test_forms_without_joint_counterpart(self):
        report = joint_equivalence_suite(
            parse_point("0.3", 512),
            [parse_map("timesb:2"), parse_map("timesb:3")],
            50,
            forms=[EquivalenceForm.POWER_MAP],
        )
        assert report.verdict_of(EquivalenceForm.POWER_MAP) == Verdict.NOT_APPLICABLE
