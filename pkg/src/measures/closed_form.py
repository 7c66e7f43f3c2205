"""Closed-form Lebesgue and Gauss measures, including log-domain versions."""

import math
from fractions import Fraction

from src.exceptions import ValidationError

_LOG_TWO = math.log(2.0)
_LOG_LOG_TWO = math.log(_LOG_TWO)
_SMALL_RATIO = 1e-12

Number = Fraction | float | int


def log_fraction(value: Fraction) -> float:
    """Natural log of a positive rational, accurate far below float range."""
    if value <= 0:
        raise ValidationError("log of a nonpositive number", field="value", value=str(value))
    return math.log(value.numerator) - math.log(value.denominator)


def lebesgue_measure(lower: Number, upper: Number) -> float:
    """Length of [lower, upper] clipped to [0, 1]."""
    _check_bounds(lower, upper)
    if _is_exact(lower, upper):
        return float(Fraction(upper) - Fraction(lower))
    return float(upper) - float(lower)


def gauss_density(point: float) -> float:
    """Gauss density 1 / ((1 + x) log 2)."""
    return 1.0 / ((1.0 + point) * _LOG_TWO)


def gauss_measure(lower: Number, upper: Number) -> float:
    """Gauss measure log((1 + b) / (1 + a)) / log 2 of (a, b).

    Computed as log1p((b - a) / (1 + a)) so short intervals keep full accuracy.
    """
    _check_bounds(lower, upper)
    if _is_exact(lower, upper):
        ratio = float((Fraction(upper) - Fraction(lower)) / (1 + Fraction(lower)))
    else:
        ratio = (float(upper) - float(lower)) / (1.0 + float(lower))
    return math.log1p(ratio) / _LOG_TWO


def gauss_log_measure(lower: Fraction, upper: Fraction) -> float:
    """Natural log of the Gauss measure of (lower, upper) for exact endpoints.

    Stays finite for intervals far shorter than the smallest float.
    """
    _check_bounds(lower, upper)
    ratio = (upper - lower) / (1 + lower)
    ratio_float = float(ratio)
    if ratio_float > _SMALL_RATIO:
        correction = math.log(math.log1p(ratio_float) / ratio_float)
    else:
        correction = -ratio_float / 2.0
    return log_fraction(ratio) + correction - _LOG_LOG_TWO


def gauss_log_measure_of_span(midpoint: float, log_length: float) -> float:
    """Log Gauss measure of a short interval from its centre and log length."""
    return log_length + math.log(gauss_density(midpoint))


def _is_exact(lower: Number, upper: Number) -> bool:
    return isinstance(lower, Fraction | int) and isinstance(upper, Fraction | int)


def _check_bounds(lower: Number, upper: Number) -> None:
    if not 0 <= lower <= upper <= 1:
        raise ValidationError(
            "Interval must satisfy 0 <= lower <= upper <= 1",
            field="interval",
            value=(str(lower), str(upper)),
        )
