"""Tests for scenario discovery and assertion evaluation."""

import pytest

from integration_tests.runner import (
    AssertionDefinition,
    ScenarioDefinition,
    ScenarioStatus,
    discover_scenario_files,
    evaluate_assertion,
    generate_report,
    load_scenario_definition,
    run_scenario,
    select,
)

PAYLOAD = {
    "aggregate": {"verdict": "pass", "pass_rate": 0.9},
    "results": [
        {"report": {"rows": [{"count": 0}, {"count": 3}]}},
        {"report": {"rows": [{"count": 0}]}},
    ],
}


class TestSelect:
    def test_dotted_path(self):
        assert list(select(PAYLOAD, "aggregate.pass_rate")) == [0.9]

    def test_wildcard_and_index(self):
        assert list(select(PAYLOAD, "results.*.report.rows.0.count")) == [0, 0]
        assert list(select(PAYLOAD, "results.0.report.rows.*.count")) == [0, 3]

    def test_missing_path(self):
        assert list(select(PAYLOAD, "results.5.report")) == []
        assert list(select(PAYLOAD, "aggregate.absent")) == []


class TestEvaluateAssertion:
    def test_equals(self):
        assertion = AssertionDefinition(name="v", path="aggregate.verdict", equals="pass")
        assert evaluate_assertion(assertion, PAYLOAD).passed

    def test_every_selected_value_must_pass(self):
        assertion = AssertionDefinition(name="c", path="results.*.report.rows.*.count", maximum=2)
        result = evaluate_assertion(assertion, PAYLOAD)
        assert not result.passed
        assert result.actual_value == 3.0

    def test_minimum(self):
        assertion = AssertionDefinition(name="r", path="aggregate.pass_rate", minimum=0.8)
        assert evaluate_assertion(assertion, PAYLOAD).passed

    def test_approx(self):
        assertion = AssertionDefinition(
            name="r", path="aggregate.pass_rate", approx=0.91, relative_tolerance=0.001
        )
        result = evaluate_assertion(assertion, PAYLOAD)
        assert not result.passed
        assert "within" in result.message

    def test_missing_path_fails(self):
        assertion = AssertionDefinition(name="m", path="aggregate.absent", equals=1)
        result = evaluate_assertion(assertion, PAYLOAD)
        assert not result.passed
        assert "not found" in result.message


class TestDefinitions:
    @pytest.mark.parametrize("path", discover_scenario_files(), ids=lambda path: path.stem)
    def test_definitions_load(self, path):
        definition = load_scenario_definition(path)
        assert definition.scenario_name == path.stem
        assert definition.assertions

    def test_filter_by_name(self):
        paths = discover_scenario_files(["mixing_base2_exact"])
        assert [path.stem for path in paths] == ["mixing_base2_exact"]


class TestRunScenario:
    def test_invalid_manifest_is_errored(self):
        definition = ScenarioDefinition(
            scenario_name="broken",
            description="",
            manifest={"command": "normality", "maps": ["timesb:1"]},
            assertions=[AssertionDefinition(name="v", path="aggregate.verdict", equals="pass")],
        )
        result = run_scenario(definition)
        assert result.status == ScenarioStatus.ERRORED
        assert result.error_message.startswith("MANIFEST_ERROR")

    def test_report_counts(self):
        definition = load_scenario_definition(discover_scenario_files(["empty_beta_cylinder"])[0])
        report = generate_report([run_scenario(definition)])
        assert report.passed == 1
        assert report.all_passed
