"""Equivalent characterizations of normality, run side by side on the same digits.

Every block-style form is counted through one engine: windows of ``length``
digits starting at ``start``, ``start + step``, ... are encoded as integers
over the tracked alphabet of each map and counted jointly with
``numpy.bincount``.  Windows containing an untracked (capped Gauss) digit
count towards N but towards no row.
"""

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np

from src.exceptions import PrecisionExhaustedError, ValidationError
from src.interval import EnclosedReal
from src.joint_ergodicity.equidistribution import equidist_test
from src.maps import DigitString, MapSpec, orbit_digits
from src.measures import MeasureSpec, measure_for_map
from src.normality.models import (
    CheckResult,
    EquivalenceForm,
    EquivalenceReport,
    FormResult,
    GateSettings,
    PatternRow,
)
from src.normality.reports import (
    normality_report_from_digits,
    pattern_label,
    pattern_target,
    tracked_symbols,
)
from src.normality.statistics import gate_verdict, make_row, resolve_gates
from src.types import Verdict

logger = logging.getLogger(__name__)

MAX_ROWS_PER_CHECK = 4096
DEFAULT_BINS = 10
DEFAULT_POWER_LENGTHS = (2, 3)
DEFAULT_SHIFT_MAX = 3
DEFAULT_BLOCK_LENGTHS = (1, 2, 3, 4)
DEFAULT_JOINT_BLOCK_LENGTHS = (1, 2)
DEFAULT_SUBSEQUENCE = (1, 2, 4)

ALL_FORMS = tuple(EquivalenceForm)
JOINT_FORMS = (
    EquivalenceForm.SLIDING,
    EquivalenceForm.EQUIDISTRIBUTION,
    EquivalenceForm.BLOCKS,
    EquivalenceForm.BLOCK_SUBSEQUENCE,
)


@dataclass(frozen=True)
class _Stream:
    """Certified digits of one map, indexed into its tracked alphabet."""

    spec: MapSpec
    measure: MeasureSpec
    alphabet: list[int]
    indices: np.ndarray


def _make_stream(digits: DigitString, symbol_cap: int | None) -> _Stream:
    spec = digits.map
    alphabet = tracked_symbols(spec, symbol_cap)
    lookup = {symbol: position for position, symbol in enumerate(alphabet)}
    indices = np.fromiter(
        (lookup.get(symbol, -1) for symbol in digits.symbols),
        dtype=np.int64,
        count=len(digits.symbols),
    )
    return _Stream(spec=spec, measure=measure_for_map(spec), alphabet=alphabet, indices=indices)


def _window_codes(stream: _Stream, length: int, start: int, step: int, windows: int) -> np.ndarray:
    """Base-|alphabet| code of each window, -1 where a digit is untracked."""
    size = len(stream.alphabet)
    codes = np.zeros(windows, dtype=np.int64)
    valid = np.ones(windows, dtype=bool)
    for offset in range(length):
        column = stream.indices[start + offset :: step][:windows]
        valid &= column >= 0
        codes = codes * size + np.where(column >= 0, column, 0)
    return np.where(valid, codes, -1)


def _pattern_targets(stream: _Stream, length: int) -> np.ndarray:
    return np.array(
        [
            pattern_target(stream.spec, stream.measure, pattern)
            for pattern in itertools.product(stream.alphabet, repeat=length)
        ]
    )


def _window_check(
    label: str,
    streams: Sequence[_Stream],
    length: int,
    start: int,
    step: int,
    windows: int,
    gates: GateSettings,
) -> CheckResult | None:
    """Joint frequencies of every tuple of tracked length-``length`` patterns.

    Returns None when the check would need more than ``MAX_ROWS_PER_CHECK`` rows.
    """
    shape = tuple(len(stream.alphabet) ** length for stream in streams)
    if not 0 < math.prod(shape) <= MAX_ROWS_PER_CHECK:
        logger.info("Skipping check %s: %d rows", label, math.prod(shape))
        return None
    codes = np.vstack(
        [_window_codes(stream, length, start, step, windows) for stream in streams]
    )
    tracked = np.all(codes >= 0, axis=0)
    flat = np.ravel_multi_index(tuple(codes[:, tracked]), shape)
    counts = np.bincount(flat, minlength=math.prod(shape))
    targets = reduce(np.multiply.outer, [_pattern_targets(stream, length) for stream in streams])
    pattern_lists = [
        list(itertools.product(stream.alphabet, repeat=length)) for stream in streams
    ]
    rows: list[PatternRow] = []
    for cell, combination in enumerate(itertools.product(*pattern_lists)):
        row_label = " & ".join(
            f"{stream.spec.name}:({pattern_label(pattern)})"
            for stream, pattern in zip(streams, combination, strict=True)
        )
        rows.append(
            make_row(
                row_label,
                list(combination),
                int(counts[cell]),
                windows,
                float(targets.flat[cell]),
                gates,
            )
        )
    return _check_from_rows(label, windows, rows, gates)


def _check_from_rows(
    label: str, windows: int, rows: Sequence[PatternRow], gates: GateSettings
) -> CheckResult:
    verdict, outliers, max_abs_z = gate_verdict(rows, gates)
    return CheckResult(
        label=label,
        windows=windows,
        row_count=len(rows),
        outliers=outliers,
        max_abs_z=max_abs_z,
        verdict=verdict,
    )


def _form_result(form: EquivalenceForm, checks: list[CheckResult]) -> FormResult:
    """A form passes when all of its checks pass; an invalid check invalidates it."""
    verdicts = {check.verdict for check in checks}
    if not checks:
        verdict = Verdict.NOT_APPLICABLE
    elif Verdict.INVALID in verdicts:
        verdict = Verdict.INVALID
    elif verdicts == {Verdict.PASS}:
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    return FormResult(form=form, checks=checks, verdict=verdict)


def _consistent(forms: Sequence[FormResult]) -> bool:
    decided = {result.verdict for result in forms} & {Verdict.PASS, Verdict.FAIL}
    return len(decided) <= 1


def _doubling_lengths(largest: int) -> list[int]:
    """1, 2, 4, ... up to ``largest``."""
    lengths = []
    length = 1
    while length <= largest:
        lengths.append(length)
        length *= 2
    return lengths


def _certified_digits(
    spec: MapSpec, point: EnclosedReal, needed: int, resolve_width: float | None
) -> DigitString:
    digits = orbit_digits(spec, point, needed, resolve_width)
    if not digits.complete:
        raise PrecisionExhaustedError(
            f"Only {digits.valid_length} of {needed} digits of {spec.name} were certified",
            achieved=digits.valid_length,
            requested=needed,
        )
    return digits


def _equidistribution_check(
    point: EnclosedReal,
    maps: Sequence[MapSpec],
    count: int,
    bins: int,
    resolve_width: float | None,
) -> CheckResult:
    report = equidist_test(point, maps, count, bins, resolve_width=resolve_width)
    return CheckResult(
        label=f"grid g={bins}",
        windows=report.grid.recorded,
        row_count=bins ** len(maps),
        outliers=0,
        max_abs_z=None,
        verdict=report.verdict,
    )


def _block_checks(
    prefix: str,
    streams: Sequence[_Stream],
    lengths: Sequence[int],
    count: int,
    gates: GateSettings,
    start: int = 0,
) -> list[CheckResult]:
    checks = []
    for length in lengths:
        check = _window_check(
            f"{prefix}m={length}", streams, length, start, length, count // length, gates
        )
        if check is not None:
            checks.append(check)
    return checks


def suite_digit_count(
    count: int,
    max_pattern_length: int = 2,
    power_lengths: Sequence[int] = DEFAULT_POWER_LENGTHS,
    shift_max: int = DEFAULT_SHIFT_MAX,
    block_lengths: Sequence[int] = DEFAULT_BLOCK_LENGTHS,
) -> int:
    """Digits :func:`equivalence_suite` reads for ``count`` windows."""
    longest = max(max_pattern_length, max(power_lengths) * max_pattern_length, max(block_lengths))
    return count + longest + shift_max


def joint_suite_digit_count(
    count: int,
    max_pattern_length: int = 1,
    block_lengths: Sequence[int] = DEFAULT_JOINT_BLOCK_LENGTHS,
    subsequence: Sequence[int] = DEFAULT_SUBSEQUENCE,
) -> int:
    """Digits per map :func:`joint_equivalence_suite` reads for ``count`` windows."""
    return count + max(max_pattern_length, max(block_lengths), max(subsequence))


def _validate_lengths(name: str, lengths: Sequence[int]) -> None:
    if not lengths or min(lengths) < 1:
        raise ValidationError(f"{name} must be a nonempty list of lengths >= 1", field=name)


def equivalence_suite(
    point: EnclosedReal,
    spec: MapSpec,
    count: int,
    *,
    forms: Sequence[EquivalenceForm] = ALL_FORMS,
    max_pattern_length: int = 2,
    power_lengths: Sequence[int] = DEFAULT_POWER_LENGTHS,
    shift_max: int = DEFAULT_SHIFT_MAX,
    block_lengths: Sequence[int] = DEFAULT_BLOCK_LENGTHS,
    bins: int = DEFAULT_BINS,
    measure: MeasureSpec | None = None,
    symbol_cap: int | None = None,
    gates: GateSettings | None = None,
    resolve_width: float | None = None,
) -> EquivalenceReport:
    """Run the selected characterizations of normality on one certified digit string.

    Forms:
        i: sliding patterns up to ``max_pattern_length``.
        ii: equidistribution of T^n x in ``bins`` equal cells.
        iii: sliding patterns of the power map T^m, m in ``power_lengths``.
        iv: simple T_m-normality of T^s x, s = 0..``shift_max``, m in ``block_lengths``.
        v: simple T_m-normality of x for m in ``block_lengths``.
        vi: simple T_m-normality along m = 1, 2, 4, ... up to max(``block_lengths``).

    Checks whose row count would exceed ``MAX_ROWS_PER_CHECK`` are skipped.

    Raises:
        PrecisionExhaustedError: If the digits every form reads were not all certified.
        ValidationError: If a length list is empty or holds a length below 1.
    """
    _validate_lengths("power_lengths", power_lengths)
    _validate_lengths("block_lengths", block_lengths)
    thresholds = gates or resolve_gates()
    needed = suite_digit_count(count, max_pattern_length, power_lengths, shift_max, block_lengths)
    digits = _certified_digits(spec, point, needed, resolve_width)
    stream = _make_stream(digits, symbol_cap)
    results = []
    for form in forms:
        checks: list[CheckResult] = []
        if form == EquivalenceForm.SLIDING:
            report = normality_report_from_digits(
                digits,
                count,
                max_pattern_length,
                measure=measure,
                symbol_cap=symbol_cap,
                gates=thresholds,
            )
            checks.append(
                _check_from_rows(f"k<={max_pattern_length}", count, report.rows, thresholds)
            )
        elif form == EquivalenceForm.EQUIDISTRIBUTION:
            checks.append(_equidistribution_check(point, [spec], count, bins, resolve_width))
        elif form == EquivalenceForm.POWER_MAP:
            for power, length in itertools.product(
                power_lengths, range(1, max_pattern_length + 1)
            ):
                check = _window_check(
                    f"T^{power} k={length}",
                    [stream],
                    power * length,
                    0,
                    power,
                    count // power,
                    thresholds,
                )
                if check is not None:
                    checks.append(check)
        elif form == EquivalenceForm.SHIFTED_BLOCKS:
            for shift in range(shift_max + 1):
                checks.extend(
                    _block_checks(
                        f"s={shift} ", [stream], block_lengths, count, thresholds, start=shift
                    )
                )
        elif form == EquivalenceForm.BLOCKS:
            checks.extend(_block_checks("", [stream], block_lengths, count, thresholds))
        else:
            checks.extend(
                _block_checks(
                    "", [stream], _doubling_lengths(max(block_lengths)), count, thresholds
                )
            )
        results.append(_form_result(form, checks))
    return EquivalenceReport(
        map_names=[spec.name],
        achieved=count,
        forms=results,
        consistent=_consistent(results),
    )


def joint_equivalence_suite(
    point: EnclosedReal,
    maps: Sequence[MapSpec],
    count: int,
    *,
    forms: Sequence[EquivalenceForm] = JOINT_FORMS,
    max_pattern_length: int = 1,
    bins: int = 8,
    block_lengths: Sequence[int] = DEFAULT_JOINT_BLOCK_LENGTHS,
    subsequence: Sequence[int] = DEFAULT_SUBSEQUENCE,
    symbol_cap: int | None = None,
    gates: GateSettings | None = None,
    resolve_width: float | None = None,
) -> EquivalenceReport:
    """Joint counterparts of the characterizations for several maps of the same x.

    Forms:
        i: joint frequencies of every tuple of patterns up to ``max_pattern_length``.
        ii: equidistribution of (T_1^n x, ..., T_k^n x) in a ``bins``^k grid.
        v: joint simple normality of the block maps for m in ``block_lengths``.
        vi: joint simple normality along the increasing ``subsequence``.

    Forms iii and iv have no joint counterpart and are reported as not applicable.

    Raises:
        PrecisionExhaustedError: If some map's digits were not all certified.
        ValidationError: If a length list is empty or holds a length below 1.
    """
    _validate_lengths("block_lengths", block_lengths)
    _validate_lengths("subsequence", subsequence)
    thresholds = gates or resolve_gates()
    needed = joint_suite_digit_count(count, max_pattern_length, block_lengths, subsequence)
    streams = []
    for spec in dict.fromkeys(maps):
        digits = _certified_digits(spec, point, needed, resolve_width)
        streams.append(_make_stream(digits, symbol_cap))
    by_map = {stream.spec: stream for stream in streams}
    ordered = [by_map[spec] for spec in maps]
    results = []
    for form in forms:
        checks: list[CheckResult] = []
        if form == EquivalenceForm.SLIDING:
            for length in range(1, max_pattern_length + 1):
                check = _window_check(f"k={length}", ordered, length, 0, 1, count, thresholds)
                if check is not None:
                    checks.append(check)
        elif form == EquivalenceForm.EQUIDISTRIBUTION:
            checks.append(_equidistribution_check(point, maps, count, bins, resolve_width))
        elif form == EquivalenceForm.BLOCKS:
            checks.extend(_block_checks("", ordered, block_lengths, count, thresholds))
        elif form == EquivalenceForm.BLOCK_SUBSEQUENCE:
            checks.extend(
                _block_checks("", ordered, sorted(set(subsequence)), count, thresholds)
            )
        results.append(_form_result(form, checks))
    return EquivalenceReport(
        map_names=[spec.name for spec in maps],
        achieved=count,
        forms=results,
        consistent=_consistent(results),
    )
