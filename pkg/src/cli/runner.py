"""Manifest execution: precision budget, per-start fan-out and the aggregate fold."""

import logging
import math
import statistics
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from src.cli.models import (
    PER_POINT_COMMANDS,
    Aggregate,
    Command,
    ExperimentManifest,
    RunRecord,
    StartResult,
)
from src.config import get_settings
from src.cylinders import Cylinder, cylinder_interval, cylinder_measure, enumerate_cylinders
from src.entropy_mixing import (
    FitStatus,
    levy_estimate,
    mixing_correlation,
    property_e_mass,
    smb_estimate,
)
from src.exceptions import JointNormalityError
from src.interval import (
    EnclosedReal,
    SampleSpec,
    check_budget,
    parse_point,
    required_bits,
    sample_point,
)
from src.joint_ergodicity import (
    ObservableSpec,
    entropy_distinct_check,
    equidist_test,
    joint_average,
)
from src.logging.adapters.run_adapter import set_run_context
from src.maps import MapFamily, MapSpec, orbit_digits, parse_map
from src.measures import (
    MeasureSpec,
    density_json,
    gauss_transfer_fixed_point_defect,
    invariance_defect,
    invariant_density,
    measure_for_map,
    measure_of_interval,
)
from src.normality import (
    GateSettings,
    equivalence_suite,
    joint_equivalence_suite,
    joint_report,
    joint_suite_digit_count,
    normality_report,
    resolve_gates,
    suite_digit_count,
)
from src.types import JsonObject, Verdict

logger = logging.getLogger(__name__)

GAUSS = parse_map("gauss")

# Commands whose aggregate mean is compared with a closed form
_SERIES_COMMANDS = frozenset({Command.ENTROPY, Command.LEVY})

# Commands that report the pairwise entropy check when several maps are given
_MULTI_MAP_COMMANDS = frozenset(
    {Command.JOINT, Command.EQUIDIST, Command.ENTROPY, Command.EQUIVALENCE}
)

_DECIDED = frozenset({Verdict.PASS, Verdict.FAIL, Verdict.INVALID})

Outcome = tuple[JsonObject, Verdict]


def required_steps(manifest: ExperimentManifest) -> int:
    """Orbit length the run certifies per map and point; 0 when no orbit is iterated."""
    count = manifest.count or 0
    match manifest.command:
        case Command.EXPAND | Command.EQUIDIST:
            return count
        case Command.NORMALITY:
            return count + manifest.max_pattern_length - 1
        case Command.JOINT:
            longest = max((len(pattern) for pattern in manifest.patterns), default=1)
            longest = max(
                [longest, *(len(observable.symbols) for observable in manifest.observables)]
            )
            return count + longest - 1
        case Command.ENTROPY | Command.LEVY:
            return manifest.n_max or 0
        case Command.EQUIVALENCE:
            if len(manifest.maps) > 1:
                return joint_suite_digit_count(count)
            return suite_digit_count(count, manifest.max_pattern_length)
        case _:
            return 0


def resolve_precision(manifest: ExperimentManifest, precision_bits: int | None = None) -> int:
    """Working bits of a run: an explicit value wins, otherwise the budget.

    Raises:
        BudgetInfeasibleError: If the budget exceeds the configured cap.
    """
    settings = get_settings()
    steps = required_steps(manifest)
    maps: list[MapSpec] = [GAUSS] if manifest.command == Command.LEVY else manifest.map_specs
    explicit = precision_bits
    if explicit is None and manifest.precision != "auto":
        explicit = int(manifest.precision)
    if steps == 0:
        return explicit or settings.minimum_precision_bits
    if explicit is not None:
        needed = required_bits(maps, steps, settings.resolve_width)
        if explicit < needed:
            logger.warning(
                "Explicit precision %d is below the %d bits a %d-step orbit needs; "
                "digit strings may stop early",
                explicit,
                needed,
                steps,
            )
        return explicit
    return check_budget(maps, steps, settings.resolve_width)


def _gates(manifest: ExperimentManifest) -> GateSettings:
    return resolve_gates(
        manifest.gates.gate_sigma,
        manifest.gates.outlier_sigma,
        manifest.gates.outliers_per_hundred,
    )


def _start_point(manifest: ExperimentManifest, index: int, bits: int) -> EnclosedReal:
    if index < len(manifest.seeds):
        return sample_point(SampleSpec(seed=manifest.seeds[index], bits=bits))
    return parse_point(manifest.points[index - len(manifest.seeds)], bits)


def _independent_points(
    manifest: ExperimentManifest, index: int, bits: int
) -> list[EnclosedReal] | None:
    """One point per map, each from a child seed of the start's seed.

    Explicit points have no seed to split and share the point across maps.
    """
    if not manifest.independent_points or index >= len(manifest.seeds):
        return None
    sequence = np.random.SeedSequence(manifest.seeds[index])
    children = sequence.spawn(len(manifest.maps))
    return [
        sample_point(SampleSpec(seed=int(child.generate_state(1, np.uint64)[0]), bits=bits))
        for child in children
    ]


def _tolerance_verdict(relative_error: float | None, tolerance: float | None) -> Verdict:
    if tolerance is None or relative_error is None:
        return Verdict.NOT_APPLICABLE
    return Verdict.PASS if relative_error <= tolerance else Verdict.FAIL


# Per-point handlers


def _run_expand(
    manifest: ExperimentManifest, point: EnclosedReal, independent: list[EnclosedReal] | None
) -> Outcome:
    settings = get_settings()
    expansions = []
    for spec in manifest.map_specs:
        digits = orbit_digits(spec, point, manifest.count or 0, settings.resolve_width)
        expansions.append(
            {
                "map": spec.name,
                "digits": list(digits.symbols),
                "requested": digits.requested,
                "stop_reason": str(digits.stop_reason),
            }
        )
    return {"expansions": expansions}, Verdict.NOT_APPLICABLE


def _run_normality(
    manifest: ExperimentManifest, point: EnclosedReal, independent: list[EnclosedReal] | None
) -> Outcome:
    reports = [
        normality_report(
            point,
            spec,
            manifest.count or 0,
            manifest.max_pattern_length,
            symbol_cap=manifest.symbol_cap,
            gates=_gates(manifest),
            resolve_width=get_settings().resolve_width,
        )
        for spec in manifest.map_specs
    ]
    verdicts = [report.verdict for report in reports]
    verdict = Verdict.PASS if all(v == Verdict.PASS for v in verdicts) else Verdict.FAIL
    if Verdict.INVALID in verdicts:
        verdict = Verdict.INVALID
    return {"reports": [report.model_dump(mode="json") for report in reports]}, verdict


def _run_joint(
    manifest: ExperimentManifest, point: EnclosedReal, independent: list[EnclosedReal] | None
) -> Outcome:
    settings = get_settings()
    specs = manifest.map_specs
    if manifest.observables:
        observables = [
            ObservableSpec(map=spec, **observable.model_dump())
            for spec, observable in zip(specs, manifest.observables, strict=True)
        ]
        average = joint_average(
            point,
            observables,
            manifest.count or 0,
            independent_points=independent,
            gate_sigma=_gates(manifest).gate_sigma,
            resolve_width=settings.resolve_width,
        )
        return average.model_dump(mode="json"), average.verdict
    report = joint_report(
        point,
        list(zip(specs, manifest.patterns, strict=True)),
        manifest.count or 0,
        gates=_gates(manifest),
        resolve_width=settings.resolve_width,
    )
    return report.model_dump(mode="json"), report.verdict


def _run_equidist(
    manifest: ExperimentManifest, point: EnclosedReal, independent: list[EnclosedReal] | None
) -> Outcome:
    report = equidist_test(
        point,
        manifest.map_specs,
        manifest.count or 0,
        manifest.bins,
        independent_points=independent,
        max_excluded_fraction=manifest.gates.max_excluded_fraction,
        resolve_width=get_settings().resolve_width,
    )
    return report.model_dump(mode="json"), report.verdict


def _run_entropy(
    manifest: ExperimentManifest, point: EnclosedReal, independent: list[EnclosedReal] | None
) -> Outcome:
    reports = [
        smb_estimate(point, spec, manifest.n_max or 0, resolve_width=get_settings().resolve_width)
        for spec in manifest.map_specs
    ]
    worst = max(
        (report.relative_error for report in reports if report.relative_error is not None),
        default=None,
    )
    verdict = _tolerance_verdict(worst, manifest.gates.relative_tolerance)
    return {"reports": [report.model_dump(mode="json") for report in reports]}, verdict


def _run_levy(
    manifest: ExperimentManifest, point: EnclosedReal, independent: list[EnclosedReal] | None
) -> Outcome:
    report = levy_estimate(point, manifest.n_max or 0, resolve_width=get_settings().resolve_width)
    verdict = _tolerance_verdict(report.relative_error, manifest.gates.relative_tolerance)
    return report.model_dump(mode="json"), verdict


def _run_equivalence(
    manifest: ExperimentManifest, point: EnclosedReal, independent: list[EnclosedReal] | None
) -> Outcome:
    settings = get_settings()
    specs = manifest.map_specs
    options = {"forms": manifest.forms} if manifest.forms else {}
    if len(specs) > 1:
        report = joint_equivalence_suite(
            point,
            specs,
            manifest.count or 0,
            symbol_cap=manifest.symbol_cap,
            gates=_gates(manifest),
            resolve_width=settings.resolve_width,
            **options,
        )
    else:
        report = equivalence_suite(
            point,
            specs[0],
            manifest.count or 0,
            max_pattern_length=manifest.max_pattern_length,
            bins=manifest.bins,
            symbol_cap=manifest.symbol_cap,
            gates=_gates(manifest),
            resolve_width=settings.resolve_width,
            **options,
        )
    verdict = Verdict.PASS if report.consistent else Verdict.FAIL
    return report.model_dump(mode="json"), verdict


# Per-map handlers


def _target(manifest: ExperimentManifest) -> tuple[Fraction, Fraction]:
    assert manifest.target is not None
    lower, upper = manifest.target
    return Fraction(lower), Fraction(upper)


def _cylinder_row(cylinder: Cylinder, measure: MeasureSpec) -> JsonObject:
    return {
        "map": cylinder.map.name,
        "symbols": list(cylinder.symbols),
        "lo": str(cylinder.exact_lower) if cylinder.exact_lower is not None else cylinder.lower,
        "hi": str(cylinder.exact_upper) if cylinder.exact_upper is not None else cylinder.upper,
        "status": str(cylinder.status),
        "empty": cylinder.empty,
        "lebesgue": cylinder.length,
        "mu": cylinder_measure(cylinder, measure),
    }


def _run_cylinder(manifest: ExperimentManifest, spec: MapSpec) -> Outcome:
    measure = measure_for_map(spec, manifest.grid_size)
    if manifest.cylinder:
        cylinder = cylinder_interval(spec, manifest.cylinder)
        return _cylinder_row(cylinder, measure), Verdict.NOT_APPLICABLE
    cylinders = enumerate_cylinders(spec, manifest.rank or 1)
    body = {
        "map": spec.name,
        "rank": manifest.rank,
        "count": len(cylinders),
        "total_length": math.fsum(cylinder.length for cylinder in cylinders),
        "cylinders": [_cylinder_row(cylinder, measure) for cylinder in cylinders],
    }
    return body, Verdict.NOT_APPLICABLE


def _run_measure(manifest: ExperimentManifest, spec: MapSpec) -> Outcome:
    lower, upper = _target(manifest)
    measure = measure_for_map(spec, manifest.grid_size)
    body = {
        "map": spec.name,
        "measure": str(measure.kind),
        "lower": str(lower),
        "upper": str(upper),
        "value": measure_of_interval(measure, lower, upper),
        "invariance_defect": invariance_defect(spec, measure, float(lower), float(upper)),
    }
    return body, Verdict.NOT_APPLICABLE


def _run_density(manifest: ExperimentManifest, spec: MapSpec) -> Outcome:
    if spec.family == MapFamily.GAUSS:
        check = gauss_transfer_fixed_point_defect()
        verdict = Verdict.PASS if check.within_tail_bound else Verdict.FAIL
        return check.model_dump(mode="json"), verdict
    table = invariant_density(spec, manifest.grid_size, require_convergence=False)
    verdict = Verdict.PASS if table.converged else Verdict.FAIL
    return density_json(table), verdict


def _run_prope(manifest: ExperimentManifest, spec: MapSpec) -> Outcome:
    report = property_e_mass(
        spec,
        manifest.epsilon or 0.0,
        manifest.ranks,
        samples=manifest.samples,
        seed=manifest.seeds[0] if manifest.seeds else 0,
        resolve_width=get_settings().resolve_width,
    )
    inside = all(mass.within_envelope is not False for mass in report.masses)
    return report.model_dump(mode="json"), Verdict.PASS if inside else Verdict.FAIL


def _run_mixing(manifest: ExperimentManifest, spec: MapSpec) -> Outcome:
    lower, upper = _target(manifest)
    report = mixing_correlation(
        spec,
        manifest.cylinder,
        lower,
        upper,
        manifest.lags,
        route=manifest.route,
        grid_size=manifest.grid_size,
        tail_tolerance=manifest.tail_tolerance,
    )
    if report.fit.status == FitStatus.INSUFFICIENT_RANGE:
        verdict = Verdict.NOT_APPLICABLE
    else:
        verdict = Verdict.PASS if report.fit.summable else Verdict.FAIL
    return report.model_dump(mode="json"), verdict


PointHandler = Callable[
    [ExperimentManifest, EnclosedReal, list[EnclosedReal] | None], Outcome
]
MapHandler = Callable[[ExperimentManifest, MapSpec], Outcome]

_POINT_HANDLERS: dict[Command, PointHandler] = {
    Command.EXPAND: _run_expand,
    Command.NORMALITY: _run_normality,
    Command.JOINT: _run_joint,
    Command.EQUIDIST: _run_equidist,
    Command.ENTROPY: _run_entropy,
    Command.LEVY: _run_levy,
    Command.EQUIVALENCE: _run_equivalence,
}

_MAP_HANDLERS: dict[Command, MapHandler] = {
    Command.CYLINDER: _run_cylinder,
    Command.MEASURE: _run_measure,
    Command.DENSITY: _run_density,
    Command.PROPE: _run_prope,
    Command.MIXING: _run_mixing,
}


def _failed(label: str, error: JointNormalityError) -> StartResult:
    logger.error("Start %s failed: %s", label, error.message, extra=error.to_log_dict())
    return StartResult(start=label, verdict=Verdict.INVALID, error=error.to_dict())


def run_start(manifest: ExperimentManifest, index: int, bits: int) -> StartResult:
    """Run one seed or explicit point; module level so worker processes can pickle it."""
    label = manifest.starts[index]
    seed = manifest.seeds[index] if index < len(manifest.seeds) else None
    set_run_context(manifest.manifest_hash(), manifest.command, seed=seed)
    try:
        point = _start_point(manifest, index, bits)
        independent = _independent_points(manifest, index, bits)
        report, verdict = _POINT_HANDLERS[manifest.command](manifest, point, independent)
    except JointNormalityError as error:
        return _failed(label, error)
    logger.debug("Start %s: %s", label, verdict)
    return StartResult(start=label, verdict=verdict, report=report)


def run_map(manifest: ExperimentManifest, index: int) -> StartResult:
    """Run a per-map command on the map at ``index``."""
    spec = manifest.map_specs[index]
    set_run_context(manifest.manifest_hash(), manifest.command)
    try:
        report, verdict = _MAP_HANDLERS[manifest.command](manifest, spec)
    except JointNormalityError as error:
        return _failed(spec.name, error)
    return StartResult(start=spec.name, verdict=verdict, report=report)


def _fan_out(manifest: ExperimentManifest, bits: int, workers: int) -> list[StartResult]:
    indices = range(len(manifest.starts))
    if workers <= 1 or len(indices) <= 1:
        return [run_start(manifest, index, bits) for index in indices]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        # map preserves submission order, so results come back in start order
        return list(
            executor.map(
                run_start,
                [manifest] * len(indices),
                indices,
                [bits] * len(indices),
            )
        )


def _final_values(manifest: ExperimentManifest, results: list[StartResult]) -> list[float]:
    values = []
    for result in results:
        if result.report is None:
            continue
        if manifest.command == Command.LEVY:
            values.append(float(result.report["final"]))
        else:
            values.extend(float(report["final"]) for report in result.report["reports"])
    return values


def _reference(manifest: ExperimentManifest, results: list[StartResult]) -> float | None:
    for result in results:
        if result.report is None:
            continue
        if manifest.command == Command.LEVY:
            return float(result.report["reference"])
        references = {float(report["closed_form"]) for report in result.report["reports"]}
        return references.pop() if len(references) == 1 else None
    return None


def aggregate(manifest: ExperimentManifest, results: list[StartResult]) -> Aggregate:
    """Fold per-start results in start order into the run verdict.

    The run passes when the pass rate among decided starts reaches the
    minimum. Entropy and Levy runs with a relative tolerance are instead
    judged on the mean final estimate against the closed form.
    """
    min_pass_rate = manifest.gates.min_pass_rate
    if min_pass_rate is None:
        min_pass_rate = get_settings().min_pass_rate
    errors = sum(1 for result in results if result.error is not None)
    decided = sum(
        1 for result in results if result.error is None and result.verdict in _DECIDED
    )
    passed = sum(1 for result in results if result.verdict == Verdict.PASS)
    pass_rate = passed / decided if decided else None
    if results and errors == len(results):
        verdict = Verdict.INVALID
    elif pass_rate is None:
        verdict = Verdict.NOT_APPLICABLE
    else:
        verdict = Verdict.PASS if pass_rate >= min_pass_rate else Verdict.FAIL

    mean_final = reference = relative_error = None
    if manifest.command in _SERIES_COMMANDS:
        values = _final_values(manifest, results)
        reference = _reference(manifest, results)
        if values:
            mean_final = statistics.fmean(values)
        if mean_final is not None and reference:
            relative_error = abs(mean_final - reference) / abs(reference)
        tolerance = manifest.gates.relative_tolerance
        if tolerance is not None and relative_error is not None:
            verdict = Verdict.PASS if relative_error <= tolerance else Verdict.FAIL
    return Aggregate(
        decided=decided,
        passed=passed,
        errors=errors,
        pass_rate=pass_rate,
        mean_final=mean_final,
        reference=reference,
        relative_error=relative_error,
        verdict=verdict,
    )


def run(
    manifest: ExperimentManifest,
    *,
    precision_bits: int | None = None,
    workers: int | None = None,
) -> RunRecord:
    """Execute a manifest.

    Failures of single starts are recorded in the results and do not stop
    the run; only problems with the run as a whole raise.

    Args:
        manifest: Validated experiment manifest.
        precision_bits: Overrides the manifest precision.
        workers: Worker processes; defaults to the configured count.

    Returns:
        The run record, identical for identical manifests.

    Raises:
        BudgetInfeasibleError: If the precision budget exceeds the cap.
    """
    started = time.perf_counter()
    manifest_hash = manifest.manifest_hash()
    set_run_context(manifest_hash, manifest.command)
    bits = resolve_precision(manifest, precision_bits)
    logger.info(
        "Running %s on %s with %d bits",
        manifest.command,
        ", ".join(manifest.maps),
        bits,
        extra={"manifest_hash": manifest_hash, "precision_bits": bits},
    )
    if manifest.command in PER_POINT_COMMANDS:
        worker_count = workers or get_settings().worker_count
        results = _fan_out(manifest, bits, worker_count)
    else:
        results = [run_map(manifest, index) for index in range(len(manifest.maps))]

    entropy_check = None
    distinct = list(dict.fromkeys(manifest.map_specs))
    if manifest.command in _MULTI_MAP_COMMANDS and len(distinct) > 1:
        entropy_check = entropy_distinct_check(distinct)

    folded = aggregate(manifest, results)
    elapsed = time.perf_counter() - started
    logger.info(
        "Run finished: %s (%d passed of %d decided, %d errors) in %.2fs",
        folded.verdict,
        folded.passed,
        folded.decided,
        folded.errors,
        elapsed,
    )
    return RunRecord(
        manifest_hash=manifest_hash,
        command=manifest.command,
        maps=manifest.maps,
        precision_bits=bits,
        results=results,
        aggregate=folded,
        entropy_check=entropy_check,
        elapsed_seconds=elapsed,
    )
