"""Normality and joint normality reports."""

import itertools
import logging
import math
from collections.abc import Sequence
from functools import lru_cache

from src.config import get_settings
from src.cylinders import cylinder_interval, cylinder_measure
from src.exceptions import PrecisionExhaustedError
from src.interval import EnclosedReal
from src.maps import DigitString, MapFamily, MapSpec, orbit_digits
from src.measures import MeasureSpec, measure_for_map
from src.normality.counting import match_mask, sliding_counts
from src.normality.models import (
    FrequencyTable,
    GateSettings,
    JointReport,
    NormalityReport,
    PatternRow,
)
from src.normality.statistics import gate_verdict, make_row, resolve_gates
from src.types import SymbolString

logger = logging.getLogger(__name__)


def pattern_label(pattern: SymbolString) -> str:
    """Printable form of a pattern, e.g. ``"0,1"``."""
    return ",".join(str(symbol) for symbol in pattern)


def tracked_symbols(spec: MapSpec, symbol_cap: int | None = None) -> list[int]:
    """Symbols reported individually; Gauss digits from ``symbol_cap`` up share a tail bucket."""
    if spec.family == MapFamily.GAUSS:
        cap = symbol_cap or get_settings().symbol_cap
        return list(range(1, cap))
    return spec.symbols()


@lru_cache(maxsize=256)
def pattern_target(spec: MapSpec, measure: MeasureSpec, pattern: SymbolString) -> float:
    """Invariant measure of the cylinder of ``pattern``."""
    return cylinder_measure(cylinder_interval(spec, pattern), measure)


def rows_from_table(
    table: FrequencyTable,
    spec: MapSpec,
    measure: MeasureSpec,
    gates: GateSettings,
    *,
    symbol_cap: int | None = None,
) -> list[PatternRow]:
    """One row per tracked pattern of the table's length.

    For the Gauss map and length-1 patterns a final tail row collects every
    digit from the cap on, with target 1 minus the tracked targets.
    """
    symbols = tracked_symbols(spec, symbol_cap)
    rows = []
    for pattern in itertools.product(symbols, repeat=table.pattern_length):
        target = pattern_target(spec, measure, pattern)
        rows.append(
            make_row(
                pattern_label(pattern),
                [pattern],
                table.count(pattern),
                table.windows,
                target,
                gates,
            )
        )
    if spec.family == MapFamily.GAUSS and table.pattern_length == 1:
        cap = symbols[-1] + 1 if symbols else 1
        tail_count = table.windows - sum(row.count for row in rows)
        tail_target = max(1.0 - sum(row.target for row in rows), 0.0)
        rows.append(make_row(f">={cap}", [(cap,)], tail_count, table.windows, tail_target, gates))
    return rows


def normality_report(
    point: EnclosedReal,
    spec: MapSpec,
    count: int,
    max_pattern_length: int = 2,
    *,
    measure: MeasureSpec | None = None,
    symbol_cap: int | None = None,
    gates: GateSettings | None = None,
    resolve_width: float | None = None,
) -> NormalityReport:
    """Sliding frequencies of every pattern up to ``max_pattern_length``.

    Args:
        point: Enclosure of x.
        spec: The map.
        count: Number of windows N.
        max_pattern_length: Longest pattern length k.
        measure: Target measure; the map's invariant measure by default.
        symbol_cap: Gauss digits tracked individually.
        gates: Verdict thresholds.
        resolve_width: Digit resolution of the orbit.

    Raises:
        PrecisionExhaustedError: If fewer than N + k - 1 digits were certified.
    """
    needed = count + max_pattern_length - 1
    digits = orbit_digits(spec, point, needed, resolve_width)
    if not digits.complete:
        raise PrecisionExhaustedError(
            f"Only {digits.valid_length} of {needed} digits of {spec.name} were certified",
            achieved=digits.valid_length,
            requested=needed,
        )
    return normality_report_from_digits(
        digits,
        count,
        max_pattern_length,
        measure=measure,
        symbol_cap=symbol_cap,
        gates=gates,
    )


def normality_report_from_digits(
    digits: DigitString,
    count: int,
    max_pattern_length: int,
    *,
    measure: MeasureSpec | None = None,
    symbol_cap: int | None = None,
    gates: GateSettings | None = None,
) -> NormalityReport:
    """Normality report over already certified digits.

    Each length k reads the first N + k - 1 digits so every length has N windows.
    """
    spec = digits.map
    target_measure = measure or measure_for_map(spec)
    thresholds = gates or resolve_gates()
    achieved = min(count, digits.valid_length - max_pattern_length + 1)
    rows: list[PatternRow] = []
    for length in range(1, max_pattern_length + 1):
        table = sliding_counts(digits.symbols[: achieved + length - 1], length)
        rows.extend(
            rows_from_table(table, spec, target_measure, thresholds, symbol_cap=symbol_cap)
        )
    verdict, outliers, max_abs_z = gate_verdict(rows, thresholds)
    return NormalityReport(
        map_name=spec.name,
        measure=target_measure.label,
        requested=count,
        achieved=achieved,
        max_pattern_length=max_pattern_length,
        symbol_cap=(symbol_cap or get_settings().symbol_cap)
        if spec.family == MapFamily.GAUSS
        else None,
        stop_reason=digits.stop_reason,
        rows=rows,
        outliers=outliers,
        max_abs_z=max_abs_z,
        verdict=verdict,
    )


def joint_report(
    point: EnclosedReal,
    map_patterns: Sequence[tuple[MapSpec, SymbolString]],
    count: int,
    *,
    gates: GateSettings | None = None,
    resolve_width: float | None = None,
) -> JointReport:
    """Frequency of windows where every map shows its pattern at once.

    The target is the product of the cylinder measures. The first row is the
    joint row; one marginal row per map follows.

    Raises:
        PrecisionExhaustedError: If no complete window could be certified.
    """
    thresholds = gates or resolve_gates()
    longest = max(len(pattern) for _, pattern in map_patterns)
    digit_strings: dict[MapSpec, DigitString] = {}
    for spec, _ in map_patterns:
        if spec not in digit_strings:
            digit_strings[spec] = orbit_digits(spec, point, count + longest - 1, resolve_width)
    achieved = min(
        [count]
        + [digit_strings[spec].valid_length - len(pattern) + 1 for spec, pattern in map_patterns]
    )
    if achieved <= 0:
        raise PrecisionExhaustedError(
            "No joint window could be certified", achieved=0, requested=count
        )
    if achieved < count:
        logger.warning("Joint report certified %d of %d windows", achieved, count)
    masks = [
        match_mask(digit_strings[spec].symbols, pattern, achieved)
        for spec, pattern in map_patterns
    ]
    targets = [
        pattern_target(spec, measure_for_map(spec), pattern) for spec, pattern in map_patterns
    ]
    joint_mask = masks[0].copy()
    for mask in masks[1:]:
        joint_mask &= mask
    labels = [f"{spec.name}:({pattern_label(pattern)})" for spec, pattern in map_patterns]
    patterns = [pattern for _, pattern in map_patterns]
    rows = [
        make_row(
            " & ".join(labels),
            patterns,
            int(joint_mask.sum()),
            achieved,
            math.prod(targets),
            thresholds,
        )
    ]
    for label, pattern, mask, target in zip(labels, patterns, masks, targets, strict=True):
        rows.append(make_row(label, [pattern], int(mask.sum()), achieved, target, thresholds))
    verdict, outliers, max_abs_z = gate_verdict(rows, thresholds)
    return JointReport(
        map_names=[spec.name for spec, _ in map_patterns],
        requested=count,
        achieved=achieved,
        rows=rows,
        outliers=outliers,
        max_abs_z=max_abs_z,
        verdict=verdict,
    )
