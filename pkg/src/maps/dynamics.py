"""Single steps, digits and certified orbits of the interval maps.

A digit is emitted only when the whole enclosure lies in one partition cell.
Cells are half-open: [., .) for the affine families and (., .] for the Gauss
map, so an enclosure touching the excluded endpoint straddles.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath.libmp import from_float, mpf_cmp

from src.config import get_settings
from src.exceptions import GaussAtZeroError, StraddleError, ValidationError
from src.interval import EnclosedReal
from src.maps.models import (
    DigitString,
    MapFamily,
    MapSpec,
    OrbitStep,
    OrbitStopReason,
    PartitionCell,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class MapImage:
    """Result of one map application.

    Attributes:
        point: Enclosure of the image; the unit interval when ``straddled``.
        straddled: Whether the input met more than one cell.
    """

    point: EnclosedReal
    straddled: bool


def partition_cells(spec: MapSpec, limit: int | None = None) -> list[PartitionCell]:
    """Generating partition of a map, in increasing symbol order.

    Args:
        spec: The map.
        limit: Number of Gauss cells to list; required for the Gauss map and
            ignored otherwise.

    Returns:
        The cells. Rotations return one trivial cell.
    """
    if spec.family == MapFamily.ROTATION:
        return [
            PartitionCell(
                symbol=0,
                lower=0.0,
                upper=1.0,
                exact_lower=Fraction(0),
                exact_upper=Fraction(1),
                trivial=True,
            )
        ]
    if spec.family == MapFamily.GAUSS:
        if limit is None:
            raise ValidationError("The Gauss partition needs a limit", field="limit")
        return [_gauss_cell(symbol) for symbol in range(1, limit + 1)]
    return [_affine_cell(spec, symbol) for symbol in spec.symbols()]


def _gauss_cell(symbol: int) -> PartitionCell:
    lower = Fraction(1, symbol + 1)
    upper = Fraction(1, symbol)
    return PartitionCell(
        symbol=symbol,
        lower=float(lower),
        upper=float(upper),
        exact_lower=lower,
        exact_upper=upper,
        left_closed=False,
        right_closed=True,
    )


def _affine_cell(spec: MapSpec, symbol: int) -> PartitionCell:
    slope = spec.slope_fraction()
    shift = spec.shift_fraction()
    if slope is not None:
        lower = max(Fraction(0), (symbol - shift) / slope)
        upper = min(Fraction(1), (symbol + 1 - shift) / slope)
        return PartitionCell(
            symbol=symbol,
            lower=float(lower),
            upper=float(upper),
            exact_lower=lower,
            exact_upper=upper,
        )
    slope_value = spec.slope_float()
    shift_value = float(shift)
    return PartitionCell(
        symbol=symbol,
        lower=max(0.0, (symbol - shift_value) / slope_value),
        upper=min(1.0, (symbol + 1 - shift_value) / slope_value),
    )


class _Stepper:
    """Precomputed parameters for repeated steps of one map at one precision."""

    def __init__(self, spec: MapSpec, bits: int) -> None:
        self.spec = spec
        self.bits = bits
        self.integer_slope: int | None = None
        self.slope: EnclosedReal | None = None
        self.shift: EnclosedReal | None = None
        if spec.is_affine:
            exact_slope = spec.slope_fraction()
            if exact_slope is not None and exact_slope.denominator == 1:
                self.integer_slope = exact_slope.numerator
            else:
                self.slope = spec.slope_enclosure(bits)
            if spec.shift_fraction() != 0:
                self.shift = spec.shift_enclosure(bits)

    def lift(self, point: EnclosedReal) -> EnclosedReal:
        """The point before reduction mod 1: slope * x + shift, or 1/x."""
        if self.spec.family == MapFamily.GAUSS:
            if not point.lower_is_positive():
                raise GaussAtZeroError("Gauss map applied to an enclosure containing 0")
            return point.reciprocal()
        if self.integer_slope is not None:
            lifted = point.multiply_integer(self.integer_slope)
        else:
            assert self.slope is not None
            lifted = point.multiply(self.slope)
        if self.shift is not None:
            lifted = lifted.add(self.shift)
        return lifted

    def step(self, point: EnclosedReal) -> tuple[int, EnclosedReal]:
        """Certified digit and image of one step.

        Raises:
            StraddleError: If the enclosure meets two cells.
            GaussAtZeroError: If a Gauss enclosure contains 0.
        """
        lifted = self.lift(point)
        lower_digit, upper_digit = lifted.floor_bounds()
        if lower_digit != upper_digit or not self.spec.has_symbol(lower_digit):
            raise StraddleError(
                f"Enclosure meets more than one cell of {self.spec.name}",
                boundary=point.midpoint_float(),
            )
        return lower_digit, lifted.subtract_integer(lower_digit)


def apply(spec: MapSpec, point: EnclosedReal) -> MapImage:
    """Apply the map once.

    A straddling enclosure is not an error here: the returned image is the hull
    of the branch images, which for these full-branch maps is [0, 1].

    Raises:
        GaussAtZeroError: If the Gauss map meets 0.
    """
    if spec.family == MapFamily.ROTATION:
        return _rotate(spec, point, 1)
    try:
        _, image = _Stepper(spec, point.bits).step(point)
    except StraddleError:
        logger.debug("Straddling apply on %s returns the unit hull", spec.name)
        return MapImage(point=EnclosedReal.unit(point.bits), straddled=True)
    return MapImage(point=image, straddled=False)


def digit(spec: MapSpec, point: EnclosedReal) -> int:
    """Symbol of the partition cell containing the whole enclosure.

    Raises:
        StraddleError: If the enclosure meets two cells.
        GaussAtZeroError: If a Gauss enclosure contains 0.
    """
    if spec.family == MapFamily.ROTATION:
        return 0
    symbol, _ = _Stepper(spec, point.bits).step(point)
    return symbol


def _rotate(spec: MapSpec, point: EnclosedReal, count: int) -> MapImage:
    shifted = point.add(spec.alpha_enclosure(point.bits).multiply_integer(count))
    lower_floor, upper_floor = shifted.floor_bounds()
    if lower_floor != upper_floor:
        return MapImage(point=EnclosedReal.unit(point.bits), straddled=True)
    return MapImage(point=shifted.subtract_integer(lower_floor), straddled=False)


@dataclass
class OrbitIterator:
    """Streaming certified orbit x, Tx, T^2 x, ...

    Iterating yields :class:`OrbitStep` values; after exhaustion
    ``stop_reason`` and ``certified_steps`` describe how the orbit ended.
    Rotation orbits are computed as x + n alpha mod 1 directly from x.

    Attributes:
        spec: The map.
        start: Enclosure of x.
        steps: Number of steps requested.
        resolve_width: Widest enclosure on which a digit is still decided.
    """

    spec: MapSpec
    start: EnclosedReal
    steps: int
    resolve_width: float
    stop_reason: OrbitStopReason = field(default=OrbitStopReason.COMPLETED, init=False)
    certified_steps: int = field(default=0, init=False)

    def __iter__(self) -> Iterator[OrbitStep]:
        if self.spec.family == MapFamily.ROTATION:
            yield from self._rotation_steps()
            return
        stepper = _Stepper(self.spec, self.start.bits)
        resolve = from_float(self.resolve_width)
        point = self.start
        for index in range(self.steps):
            if mpf_cmp(point.width(), resolve) > 0:
                self._stop(OrbitStopReason.PRECISION_EXHAUSTED, index)
                return
            try:
                symbol, image = stepper.step(point)
            except StraddleError:
                self._stop(OrbitStopReason.STRADDLE, index)
                return
            except GaussAtZeroError:
                self._stop(OrbitStopReason.TERMINATED, index)
                return
            self.certified_steps = index + 1
            yield OrbitStep.model_construct(index=index, point=point, symbol=symbol)
            point = image
        self.stop_reason = OrbitStopReason.COMPLETED

    def _rotation_steps(self) -> Iterator[OrbitStep]:
        for index in range(self.steps):
            image = _rotate(self.spec, self.start, index) if index else None
            point = self.start if image is None else image.point
            if image is not None and image.straddled:
                self._stop(OrbitStopReason.STRADDLE, index)
                return
            self.certified_steps = index + 1
            yield OrbitStep.model_construct(index=index, point=point, symbol=0)
        self.stop_reason = OrbitStopReason.COMPLETED

    def _stop(self, reason: OrbitStopReason, index: int) -> None:
        self.stop_reason = reason
        self.certified_steps = index
        log_level = logging.DEBUG if reason == OrbitStopReason.TERMINATED else logging.WARNING
        logger.log(
            log_level,
            "Orbit of %s stopped after %d of %d steps: %s",
            self.spec.name,
            index,
            self.steps,
            reason,
        )


def iterate_orbit(
    spec: MapSpec,
    point: EnclosedReal,
    steps: int,
    resolve_width: float | None = None,
) -> OrbitIterator:
    """Certified orbit of ``point``; see :class:`OrbitIterator`."""
    width = get_settings().resolve_width if resolve_width is None else resolve_width
    return OrbitIterator(spec=spec, start=point, steps=steps, resolve_width=width)


def orbit_digits(
    spec: MapSpec,
    point: EnclosedReal,
    count: int,
    resolve_width: float | None = None,
) -> DigitString:
    """First ``count`` certified digits of ``point``.

    Emission stops early on a straddle, when the enclosure grows wider than
    ``resolve_width``, or when a Gauss orbit reaches 0; ``stop_reason`` says
    which.
    """
    orbit = iterate_orbit(spec, point, count, resolve_width)
    symbols = tuple(step.symbol for step in orbit)
    return DigitString(map=spec, symbols=symbols, requested=count, stop_reason=orbit.stop_reason)


def reconstruct_base_b(digits: tuple[int, ...], base: int) -> tuple[Fraction, Fraction]:
    """Interval of points whose first base-b digits are ``digits``."""
    lower = Fraction(0)
    for position, value in enumerate(digits, 1):
        lower += Fraction(value, base**position)
    return lower, lower + Fraction(1, base ** len(digits))


def digits_needed(length: int, pattern_length: int) -> int:
    """Digits required to read ``length`` windows of ``pattern_length``."""
    return length + max(pattern_length, 1) - 1

