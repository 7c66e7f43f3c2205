"""Scenario runner for seeded desk-scale reproductions.

Each scenario is a JSON file holding an experiment manifest and a list of
assertions over the JSON payload of the run. Designed to be invoked from
pytest or directly via ``python -m integration_tests.runner``.
"""

from __future__ import annotations

import json
import math
import sys
import time
from datetime import UTC, datetime
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, Field

from src.cli import manifest_from_data, record_json, run
from src.exceptions import JointNormalityError

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

DEFINITIONS_DIRECTORY: Path = Path(__file__).parent / "scenarios" / "definitions"
RESULTS_DIRECTORY: Path = Path(__file__).parent / "results"
WILDCARD = "*"


# ---------------------------------------------------------------------------
# Enums
# ---------------------------------------------------------------------------


class ScenarioStatus(StrEnum):
    """Possible outcomes of a scenario run."""

    PASSED = "passed"
    FAILED = "failed"
    ERRORED = "errored"


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


class AssertionDefinition(BaseModel):
    """A single assertion from a scenario JSON file.

    ``path`` is a dotted path into the run payload; ``*`` selects every
    element of a list and every selected value must satisfy the checks.
    """

    name: str
    path: str
    equals: float | str | bool | None = None
    minimum: float | None = None
    maximum: float | None = None
    approx: float | None = None
    relative_tolerance: float = Field(default=1e-9, gt=0)


class ScenarioDefinition(BaseModel):
    """Parsed scenario definition loaded from a JSON file."""

    scenario_name: str
    description: str
    manifest: dict[str, Any]
    assertions: list[AssertionDefinition] = Field(min_length=1)


class AssertionResult(BaseModel):
    """Result of evaluating a single assertion."""

    name: str
    passed: bool
    message: str = ""
    actual_value: float | str | bool | None = None


class ScenarioResult(BaseModel):
    """Outcome of one scenario."""

    scenario_name: str
    status: ScenarioStatus
    duration_seconds: float = 0.0
    assertion_results: list[AssertionResult] = Field(default_factory=list)
    error_message: str = ""


class RunReport(BaseModel):
    """Summary report for a whole scenario run."""

    timestamp: str = Field(
        default_factory=lambda: datetime.now(UTC).isoformat(),
    )
    total_scenarios: int = 0
    passed: int = 0
    failed: int = 0
    errored: int = 0
    scenario_results: list[ScenarioResult] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        """Return True when every scenario passed."""
        return self.failed == 0 and self.errored == 0


# ---------------------------------------------------------------------------
# Scenario discovery
# ---------------------------------------------------------------------------


def discover_scenario_files(
    scenario_names: Sequence[str] | None = None,
) -> list[Path]:
    """Find scenario definition JSON files.

    Args:
        scenario_names: Optional list of scenario names to filter by.
            When ``None``, all JSON files in the definitions directory
            are returned.

    Returns:
        Sorted list of paths to scenario definition files.
    """
    all_files = sorted(DEFINITIONS_DIRECTORY.glob("*.json"))

    if scenario_names is None:
        return all_files

    requested = set(scenario_names)
    return [path for path in all_files if path.stem in requested]


def load_scenario_definition(path: Path) -> ScenarioDefinition:
    """Load and validate a scenario definition from a JSON file."""
    raw_data = json.loads(path.read_text(encoding="utf-8"))
    return ScenarioDefinition.model_validate(raw_data)


# ---------------------------------------------------------------------------
# Assertion evaluation
# ---------------------------------------------------------------------------


def select(payload: object, path: str) -> Iterator[object]:
    """Values of ``payload`` at a dotted path; missing keys yield nothing."""
    head, _, rest = path.partition(".")
    if isinstance(payload, list):
        if head == WILDCARD:
            children = payload
        elif head.isdigit() and int(head) < len(payload):
            children = [payload[int(head)]]
        else:
            children = []
    elif isinstance(payload, dict) and head in payload:
        children = [payload[head]]
    else:
        children = []
    for child in children:
        if rest:
            yield from select(child, rest)
        else:
            yield child


def _check_value(
    assertion: AssertionDefinition, value: object
) -> tuple[bool, float | str | bool | None, str]:
    if assertion.equals is not None:
        passed = value == assertion.equals
        return passed, _reported(value), "" if passed else f"Expected {assertion.equals!r}"
    if not isinstance(value, int | float) or isinstance(value, bool):
        return False, _reported(value), f"Expected a number, got {value!r}"
    numeric_value = float(value)
    if assertion.minimum is not None and numeric_value < assertion.minimum:
        return False, numeric_value, f"Got {numeric_value}, minimum is {assertion.minimum}"
    if assertion.maximum is not None and numeric_value > assertion.maximum:
        return False, numeric_value, f"Got {numeric_value}, maximum is {assertion.maximum}"
    if assertion.approx is not None and not math.isclose(
        numeric_value, assertion.approx, rel_tol=assertion.relative_tolerance
    ):
        message = (
            f"Got {numeric_value}, expected {assertion.approx} "
            f"within {assertion.relative_tolerance:.1%}"
        )
        return False, numeric_value, message
    return True, numeric_value, ""


def _reported(value: object) -> float | str | bool | None:
    if value is None or isinstance(value, bool | float | str):
        return value
    if isinstance(value, int):
        return float(value)
    return str(value)


def evaluate_assertion(assertion: AssertionDefinition, payload: object) -> AssertionResult:
    """Evaluate one assertion against every value its path selects."""
    values = list(select(payload, assertion.path))
    if not values:
        return AssertionResult(
            name=assertion.name,
            passed=False,
            message=f"Path '{assertion.path}' not found in the payload",
        )
    for value in values:
        passed, actual_value, message = _check_value(assertion, value)
        if not passed:
            return AssertionResult(
                name=assertion.name, passed=False, message=message, actual_value=actual_value
            )
    return AssertionResult(name=assertion.name, passed=True, actual_value=_reported(values[-1]))


def evaluate_assertions(
    definition: ScenarioDefinition, payload: object
) -> list[AssertionResult]:
    """Evaluate every assertion of a scenario."""
    return [evaluate_assertion(assertion, payload) for assertion in definition.assertions]


# ---------------------------------------------------------------------------
# Scenario execution
# ---------------------------------------------------------------------------


def run_scenario(definition: ScenarioDefinition, workers: int | None = None) -> ScenarioResult:
    """Run a scenario's manifest and evaluate its assertions.

    Args:
        definition: The scenario definition to execute.
        workers: Worker processes for the seed fan-out.

    Returns:
        The scenario result including assertion evaluations.
    """
    start_time = time.monotonic()

    try:
        manifest = manifest_from_data(definition.manifest)
        payload = json.loads(record_json(run(manifest, workers=workers)))
    except JointNormalityError as error:
        return ScenarioResult(
            scenario_name=definition.scenario_name,
            status=ScenarioStatus.ERRORED,
            duration_seconds=time.monotonic() - start_time,
            error_message=f"{error.error_code}: {error.message}",
        )

    assertion_results = evaluate_assertions(definition, payload)
    all_assertions_passed = all(result.passed for result in assertion_results)

    return ScenarioResult(
        scenario_name=definition.scenario_name,
        status=ScenarioStatus.PASSED if all_assertions_passed else ScenarioStatus.FAILED,
        duration_seconds=time.monotonic() - start_time,
        assertion_results=assertion_results,
        error_message="" if all_assertions_passed else "One or more assertions failed",
    )


# ---------------------------------------------------------------------------
# Report generation
# ---------------------------------------------------------------------------


def generate_report(scenario_results: list[ScenarioResult]) -> RunReport:
    """Count scenario outcomes into a run report."""
    return RunReport(
        total_scenarios=len(scenario_results),
        passed=sum(1 for result in scenario_results if result.status == ScenarioStatus.PASSED),
        failed=sum(1 for result in scenario_results if result.status == ScenarioStatus.FAILED),
        errored=sum(1 for result in scenario_results if result.status == ScenarioStatus.ERRORED),
        scenario_results=scenario_results,
    )


def write_report(report: RunReport) -> Path:
    """Write the run report to the results directory as JSON.

    Returns:
        Path to the written report file.
    """
    RESULTS_DIRECTORY.mkdir(parents=True, exist_ok=True)
    timestamp = datetime.now(UTC).strftime("%Y%m%d_%H%M%S")
    report_path = RESULTS_DIRECTORY / f"run_{timestamp}.json"
    report_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    return report_path


def print_report_summary(report: RunReport) -> None:
    """Print a human-readable summary of the run report to stdout."""
    print("\n" + "=" * 70)  # noqa: T201
    print("SCENARIO REPORT")  # noqa: T201
    print("=" * 70)  # noqa: T201
    print(f"Timestamp: {report.timestamp}")  # noqa: T201
    print(f"Total:     {report.total_scenarios}")  # noqa: T201
    print(f"Passed:    {report.passed}")  # noqa: T201
    print(f"Failed:    {report.failed}")  # noqa: T201
    print(f"Errored:   {report.errored}")  # noqa: T201
    print("-" * 70)  # noqa: T201

    for scenario_result in report.scenario_results:
        status_indicator = "PASS" if scenario_result.status == ScenarioStatus.PASSED else "FAIL"
        print(  # noqa: T201
            f"  [{status_indicator}] {scenario_result.scenario_name} "
            f"({scenario_result.duration_seconds:.1f}s)"
        )

        if scenario_result.error_message:
            print(f"         Error: {scenario_result.error_message}")  # noqa: T201

        for assertion_result in scenario_result.assertion_results:
            if not assertion_result.passed:
                print(  # noqa: T201
                    f"         FAIL: {assertion_result.name} - {assertion_result.message}"
                )

    print("=" * 70)  # noqa: T201
    overall = "ALL PASSED" if report.all_passed else "FAILURES DETECTED"
    print(f"Result: {overall}")  # noqa: T201
    print("=" * 70 + "\n")  # noqa: T201


# ---------------------------------------------------------------------------
# Main entry point
# ---------------------------------------------------------------------------


def main(scenario_names: Sequence[str] | None = None, workers: int | None = None) -> int:
    """Run scenarios and return an exit code.

    Args:
        scenario_names: Optional list of scenario names to run. When
            ``None``, all discovered scenarios are executed.
        workers: Worker processes for the seed fan-out.

    Returns:
        Exit code: 0 if all scenarios pass, 1 otherwise.
    """
    scenario_files = discover_scenario_files(scenario_names)
    if not scenario_files:
        print("ERROR: No scenario definitions found")  # noqa: T201
        return 1

    definitions = [load_scenario_definition(path) for path in scenario_files]
    print(f"Running {len(definitions)} scenario(s)...")  # noqa: T201

    all_results: list[ScenarioResult] = []
    for definition in definitions:
        result = run_scenario(definition, workers)
        all_results.append(result)
        print(f"  {definition.scenario_name} -> {result.status}")  # noqa: T201

    report = generate_report(all_results)
    report_path = write_report(report)
    print_report_summary(report)
    print(f"Report written to: {report_path}")  # noqa: T201

    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:] or None))
