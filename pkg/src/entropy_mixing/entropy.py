"""Shannon-McMillan-Breiman and Levy constant estimators along one orbit."""

import logging
import math
from collections.abc import Iterable

from src.constants import LEVY_CONSTANT
from src.cylinders import cylinder_interval, cylinder_log_measure, denominators
from src.entropy_mixing.models import EntropyReport, LevyReport, SeriesPoint
from src.exceptions import PrecisionExhaustedError, ValidationError
from src.interval import EnclosedReal
from src.maps import (
    DigitString,
    MapFamily,
    MapSpec,
    OrbitStopReason,
    closed_form_entropy,
    orbit_digits,
)
from src.measures import MeasureSpec, measure_for_map

logger = logging.getLogger(__name__)

GAUSS_MAP = MapSpec(family=MapFamily.GAUSS)


def decade_checkpoints(n_max: int) -> list[int]:
    """10, 100, 1000, ... below ``n_max``, then ``n_max`` itself."""
    if n_max < 1:
        raise ValidationError("n_max must be at least 1", field="n_max", value=n_max)
    marks = []
    mark = 10
    while mark < n_max:
        marks.append(mark)
        mark *= 10
    marks.append(n_max)
    return marks


def _certified(
    spec: MapSpec, point: EnclosedReal, n_max: int, resolve_width: float | None
) -> DigitString:
    """Digits up to ``n_max``; a Gauss orbit that reaches 0 ends the expansion early."""
    digits = orbit_digits(spec, point, n_max, resolve_width)
    if digits.complete:
        return digits
    if digits.stop_reason == OrbitStopReason.TERMINATED and digits.valid_length > 0:
        logger.info("Expansion of a rational point ends after %d digits", digits.valid_length)
        return digits
    raise PrecisionExhaustedError(
        f"Only {digits.valid_length} of {n_max} digits of {spec.name} were certified",
        achieved=digits.valid_length,
        requested=n_max,
    )


def _marks(checkpoints: Iterable[int] | None, n_max: int, achieved: int) -> list[int]:
    marks = decade_checkpoints(n_max) if checkpoints is None else sorted(set(checkpoints))
    kept = [mark for mark in marks if 1 <= mark <= achieved]
    if achieved < n_max and achieved not in kept:
        kept.append(achieved)
    return kept


def smb_estimate(
    point: EnclosedReal,
    spec: MapSpec,
    n_max: int,
    *,
    measure: MeasureSpec | None = None,
    checkpoints: Iterable[int] | None = None,
    resolve_width: float | None = None,
) -> EntropyReport:
    """Estimate h(T) by -(1/n) log mu(A^n(x)) at checkpoints up to ``n_max``.

    Cylinder measures are taken in the log domain so ranks in the thousands
    stay far from float underflow.

    Raises:
        PrecisionExhaustedError: If the orbit stops before ``n_max`` digits.
        UnsupportedMapError: For rotations, which have no generating partition.
    """
    digits = _certified(spec, point, n_max, resolve_width)
    target_measure = measure or measure_for_map(spec)
    reference = closed_form_entropy(spec)
    series = []
    for n in _marks(checkpoints, n_max, digits.valid_length):
        log_mass = cylinder_log_measure(
            cylinder_interval(spec, digits.symbols[:n]), target_measure
        )
        series.append(SeriesPoint(n=n, value=-log_mass / n))
    final = series[-1].value
    relative_error = (
        abs(final - reference.value) / reference.value if reference.value > 0 else None
    )
    logger.debug("SMB estimate of %s at n=%d: %.6f", spec.name, series[-1].n, final)
    return EntropyReport(
        map_name=spec.name,
        measure=target_measure.label,
        closed_form=reference.value,
        formula=reference.formula,
        series=series,
        final=final,
        relative_error=relative_error,
        achieved=digits.valid_length,
        stop_reason=digits.stop_reason,
    )


def fibonacci_bound_holds(values: Iterable[int]) -> bool:
    """Whether q_n >= F_{n+1} for every denominator, F_1 = F_2 = 1."""
    previous, current = 1, 1
    for denominator in values:
        if denominator < current:
            return False
        previous, current = current, previous + current
    return True


def levy_estimate(
    point: EnclosedReal,
    n_max: int,
    *,
    checkpoints: Iterable[int] | None = None,
    resolve_width: float | None = None,
) -> LevyReport:
    """Series (n, (1/n) log q_n) from the exact convergent recurrence.

    Raises:
        PrecisionExhaustedError: If fewer than ``n_max`` partial quotients were
            certified and the expansion did not terminate.
    """
    digits = _certified(GAUSS_MAP, point, n_max, resolve_width)
    values = list(denominators(digits.symbols))
    marks = set(_marks(checkpoints, n_max, digits.valid_length))
    series = [SeriesPoint(n=n, value=math.log(values[n - 1]) / n) for n in sorted(marks)]
    final = series[-1].value
    return LevyReport(
        requested=n_max,
        achieved=digits.valid_length,
        series=series,
        final=final,
        relative_error=abs(final - LEVY_CONSTANT) / LEVY_CONSTANT,
        fibonacci_bound_holds=fibonacci_bound_holds(values),
        stop_reason=digits.stop_reason,
    )
