"""Evaluating invariant measures on intervals and preimages."""

import logging
import math
from fractions import Fraction

from src.config import get_settings
from src.exceptions import UnsupportedMapError
from src.maps import MapFamily, MapSpec
from src.measures.closed_form import (
    Number,
    gauss_density,
    gauss_log_measure,
    gauss_measure,
    lebesgue_measure,
    log_fraction,
)
from src.measures.models import MeasureKind, MeasureSpec
from src.measures.transfer import invariant_density

logger = logging.getLogger(__name__)

LEBESGUE = MeasureSpec(kind=MeasureKind.LEBESGUE)
GAUSS = MeasureSpec(kind=MeasureKind.GAUSS)


def measure_for_map(spec: MapSpec, grid_size: int | None = None) -> MeasureSpec:
    """The absolutely continuous invariant measure of a map.

    Lebesgue for integer slopes and rotations, the Gauss measure for the Gauss
    map, and a numerically computed density otherwise.
    """
    if spec.family in {MapFamily.TIMES_B, MapFamily.ROTATION}:
        return LEBESGUE
    if spec.family == MapFamily.GAUSS:
        return GAUSS
    slope = spec.slope_fraction()
    if slope is not None and slope.denominator == 1:
        return LEBESGUE
    density = invariant_density(spec, grid_size)
    return MeasureSpec(kind=MeasureKind.NUMERIC_INVARIANT, map=spec, density=density)


def measure_of_interval(measure: MeasureSpec, lower: Number, upper: Number) -> float:
    """Measure of [lower, upper].

    Exact for Lebesgue and Gauss; grid quadrature with error at most one bin
    width times the largest density value for numeric densities.
    """
    match measure.kind:
        case MeasureKind.LEBESGUE:
            return lebesgue_measure(lower, upper)
        case MeasureKind.GAUSS:
            return gauss_measure(lower, upper)
        case MeasureKind.NUMERIC_INVARIANT:
            assert measure.density is not None
            return measure.density.integral(float(lower), float(upper))


def log_measure_of_interval(measure: MeasureSpec, lower: Fraction, upper: Fraction) -> float:
    """Natural log of the measure of an interval with exact endpoints.

    Works for intervals whose measure underflows a float.
    """
    length = upper - lower
    if length <= 0:
        return -math.inf
    match measure.kind:
        case MeasureKind.LEBESGUE:
            return log_fraction(length)
        case MeasureKind.GAUSS:
            return gauss_log_measure(lower, upper)
        case MeasureKind.NUMERIC_INVARIANT:
            midpoint = float((lower + upper) / 2)
            return log_measure_of_span(measure, midpoint, log_fraction(length))


def log_measure_of_span(measure: MeasureSpec, midpoint: float, log_length: float) -> float:
    """Log measure of a short interval given its centre and log length.

    The density is treated as constant across the interval, which holds to
    within one grid bin for numeric densities.
    """
    match measure.kind:
        case MeasureKind.LEBESGUE:
            return log_length
        case MeasureKind.GAUSS:
            return log_length + math.log(gauss_density(midpoint))
        case MeasureKind.NUMERIC_INVARIANT:
            assert measure.density is not None
            return log_length + math.log(measure.density.value_at(midpoint))


def preimage_intervals(
    spec: MapSpec,
    lower: float,
    upper: float,
    branch_cap: int | None = None,
) -> list[tuple[float, float]]:
    """Branchwise preimage T^-1 [lower, upper).

    Gauss preimages are truncated at ``branch_cap`` partial quotients.
    """
    if spec.is_affine:
        slope = spec.slope_float()
        shift = float(spec.shift_fraction())
        pieces = []
        for symbol in spec.symbols():
            image_lower = max(lower, shift - symbol, 0.0)
            image_upper = min(upper, slope + shift - symbol, 1.0)
            if image_upper > image_lower:
                start = max(0.0, (image_lower + symbol - shift) / slope)
                end = min(1.0, (image_upper + symbol - shift) / slope)
                pieces.append((start, end))
        return pieces
    if spec.family == MapFamily.GAUSS:
        cap = branch_cap or get_settings().gauss_branch_cap
        return [(1.0 / (symbol + upper), 1.0 / (symbol + lower)) for symbol in range(1, cap + 1)]
    if spec.family == MapFamily.ROTATION:
        alpha = spec.alpha_enclosure(64).midpoint_float()
        start, end = lower - alpha, upper - alpha
        if start >= 0:
            return [(start, end)]
        if end <= 0:
            return [(start + 1.0, end + 1.0)]
        return [(0.0, end), (start + 1.0, 1.0)]
    raise UnsupportedMapError(f"No preimage rule for {spec.name}")


def invariance_defect(
    spec: MapSpec,
    measure: MeasureSpec,
    lower: float,
    upper: float,
    branch_cap: int | None = None,
) -> float:
    """|mu(T^-1 I) - mu(I)| for I = [lower, upper)."""
    preimage_mass = sum(
        measure_of_interval(measure, start, end)
        for start, end in preimage_intervals(spec, lower, upper, branch_cap)
    )
    defect = abs(preimage_mass - measure_of_interval(measure, lower, upper))
    logger.debug("Invariance defect of %s on [%g, %g): %.3e", spec.name, lower, upper, defect)
    return defect
