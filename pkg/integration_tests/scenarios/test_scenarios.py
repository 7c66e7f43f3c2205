"""Seeded desk-scale reproductions.

Each definition under ``definitions/`` is one manifest plus the gates its
payload must meet. Statistical gates are fixed in the files; seeds are
fixed too, so a failure reproduces exactly.
"""

import pytest

from integration_tests.runner import (
    ScenarioStatus,
    discover_scenario_files,
    load_scenario_definition,
    run_scenario,
)

pytestmark = pytest.mark.statistical

# Scenarios that iterate 10^5 digits or enumerate 10^3 cylinders per run
SLOW_SCENARIOS = frozenset(
    {
        "borel_normality_base2",
        "borel_normality_base10",
        "equidistribution_two_three",
        "levy_constant",
        "smb_entropy_gauss",
        "smb_entropy_golden",
    }
)


def _scenario_params():
    for path in discover_scenario_files():
        marks = [pytest.mark.slow] if path.stem in SLOW_SCENARIOS else []
        yield pytest.param(path, id=path.stem, marks=marks)


@pytest.mark.parametrize("path", list(_scenario_params()))
def test_scenario(path, scenario_workers):
    definition = load_scenario_definition(path)
    result = run_scenario(definition, scenario_workers)
    failures = [
        f"{assertion.name}: {assertion.message}"
        for assertion in result.assertion_results
        if not assertion.passed
    ]
    assert result.status == ScenarioStatus.PASSED, result.error_message or "; ".join(failures)
