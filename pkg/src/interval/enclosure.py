"""Directed-rounding enclosures of points of the unit interval.

Endpoints are raw mpmath binary floats (``mpmath.libmp`` value tuples). Lower
endpoints are always rounded toward -inf and upper endpoints toward +inf, so
every operation returns an enclosure of the exact image. Integer operations
are carried out exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING

from mpmath.libmp import (
    fone,
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_floor,
    mpf_mul,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    round_nearest,
    to_float,
    to_int,
    to_rational,
)

from src.exceptions import ValidationError

if TYPE_CHECKING:
    from src.interval.models import PrecisionConfig

MpfValue = tuple[int, int, int, int]

_NAMED_POINTS = ("sqrt2m1", "invgolden")


@dataclass(frozen=True, slots=True)
class EnclosedReal:
    """A closed interval [lower, upper] known to contain a real number.

    Attributes:
        lower: Lower endpoint, rounded down.
        upper: Upper endpoint, rounded up.
        bits: Working precision used when an operation must round.
    """

    lower: MpfValue
    upper: MpfValue
    bits: int

    @classmethod
    def exact(cls, value: Fraction | int, bits: int) -> EnclosedReal:
        """Enclose a rational number as tightly as ``bits`` allows."""
        fraction = Fraction(value)
        numerator, denominator = fraction.numerator, fraction.denominator
        return cls(
            lower=from_rational(numerator, denominator, bits, round_floor),
            upper=from_rational(numerator, denominator, bits, round_ceiling),
            bits=bits,
        )

    @classmethod
    def unit(cls, bits: int) -> EnclosedReal:
        """The whole unit interval, the hull returned for straddling images."""
        return cls(lower=fzero, upper=fone, bits=bits)

    # -- inspection ---------------------------------------------------------

    def width(self) -> MpfValue:
        """Upper bound on the enclosure width."""
        return mpf_sub(self.upper, self.lower, self.bits, round_ceiling)

    def width_float(self) -> float:
        """Enclosure width as a float (rounded up)."""
        return to_float(self.width(), rnd=round_ceiling)

    def lower_float(self) -> float:
        """Lower endpoint as a float."""
        return to_float(self.lower)

    def upper_float(self) -> float:
        """Upper endpoint as a float."""
        return to_float(self.upper)

    def midpoint_float(self) -> float:
        """Midpoint as a float."""
        total = mpf_add(self.lower, self.upper, self.bits + 1, round_nearest)
        return to_float(mpf_shift(total, -1))

    def lower_fraction(self) -> Fraction:
        """Lower endpoint as an exact rational."""
        return Fraction(*to_rational(self.lower))

    def upper_fraction(self) -> Fraction:
        """Upper endpoint as an exact rational."""
        return Fraction(*to_rational(self.upper))

    def contains(self, value: Fraction | int) -> bool:
        """Whether the exact rational ``value`` lies in the enclosure."""
        fraction = Fraction(value)
        return (
            compare_to_fraction(self.lower, fraction) <= 0
            and compare_to_fraction(self.upper, fraction) >= 0
        )

    def is_exact(self) -> bool:
        """Whether the enclosure is a single point."""
        return mpf_cmp(self.lower, self.upper) == 0

    def floor_bounds(self) -> tuple[int, int]:
        """Floors of both endpoints."""
        return (
            to_int(mpf_floor(self.lower)),
            to_int(mpf_floor(self.upper)),
        )

    def lower_is_positive(self) -> bool:
        """Whether every point of the enclosure is strictly positive."""
        return mpf_cmp(self.lower, fzero) > 0

    # -- arithmetic ---------------------------------------------------------

    def add(self, other: EnclosedReal) -> EnclosedReal:
        """Enclosure of the sum."""
        return EnclosedReal(
            lower=mpf_add(self.lower, other.lower, self.bits, round_floor),
            upper=mpf_add(self.upper, other.upper, self.bits, round_ceiling),
            bits=self.bits,
        )

    def add_integer(self, value: int) -> EnclosedReal:
        """Exact shift by an integer."""
        shift = from_int(value)
        return EnclosedReal(
            lower=mpf_add(self.lower, shift),
            upper=mpf_add(self.upper, shift),
            bits=self.bits,
        )

    def subtract_integer(self, value: int) -> EnclosedReal:
        """Exact shift by minus an integer."""
        return self.add_integer(-value)

    def multiply_integer(self, value: int) -> EnclosedReal:
        """Exact product with a nonnegative integer."""
        if value < 0:
            raise ValidationError("Integer factor must be nonnegative", field="value", value=value)
        factor = from_int(value)
        return EnclosedReal(
            lower=mpf_mul(self.lower, factor),
            upper=mpf_mul(self.upper, factor),
            bits=self.bits,
        )

    def multiply(self, other: EnclosedReal) -> EnclosedReal:
        """Enclosure of the product of two nonnegative enclosures."""
        if mpf_cmp(self.lower, fzero) < 0 or mpf_cmp(other.lower, fzero) < 0:
            raise ValidationError("multiply expects nonnegative enclosures", field="lower")
        return EnclosedReal(
            lower=mpf_mul(self.lower, other.lower, self.bits, round_floor),
            upper=mpf_mul(self.upper, other.upper, self.bits, round_ceiling),
            bits=self.bits,
        )

    def divide(self, other: EnclosedReal) -> EnclosedReal:
        """Enclosure of the quotient of a nonnegative by a positive enclosure."""
        if not other.lower_is_positive() or mpf_cmp(self.lower, fzero) < 0:
            raise ValidationError("divide expects a positive divisor", field="divisor")
        return EnclosedReal(
            lower=mpf_div(self.lower, other.upper, self.bits, round_floor),
            upper=mpf_div(self.upper, other.lower, self.bits, round_ceiling),
            bits=self.bits,
        )

    def reciprocal(self) -> EnclosedReal:
        """Enclosure of 1/x for an enclosure of strictly positive numbers."""
        if not self.lower_is_positive():
            raise ValidationError("reciprocal of an enclosure containing 0", field="lower")
        return EnclosedReal(
            lower=mpf_div(fone, self.upper, self.bits, round_floor),
            upper=mpf_div(fone, self.lower, self.bits, round_ceiling),
            bits=self.bits,
        )

    def hull(self, other: EnclosedReal) -> EnclosedReal:
        """Smallest enclosure containing both enclosures."""
        lower = self.lower if mpf_cmp(self.lower, other.lower) <= 0 else other.lower
        upper = self.upper if mpf_cmp(self.upper, other.upper) >= 0 else other.upper
        return EnclosedReal(lower=lower, upper=upper, bits=max(self.bits, other.bits))

    def clamp(self, minimum: MpfValue, maximum: MpfValue) -> EnclosedReal:
        """Apply max(., minimum) and min(., maximum) to both endpoints."""
        lower = maximum_value(minimum_value(self.lower, maximum), minimum)
        upper = maximum_value(minimum_value(self.upper, maximum), minimum)
        return EnclosedReal(lower=lower, upper=upper, bits=self.bits)


def compare_to_fraction(value: MpfValue, fraction: Fraction) -> int:
    """Exactly compare a binary float with a rational; returns -1, 0 or 1."""
    numerator, denominator = to_rational(value)
    left = numerator * fraction.denominator
    right = fraction.numerator * denominator
    return (left > right) - (left < right)


def maximum_value(first: MpfValue, second: MpfValue) -> MpfValue:
    """Larger of two binary floats."""
    return first if mpf_cmp(first, second) >= 0 else second


def minimum_value(first: MpfValue, second: MpfValue) -> MpfValue:
    """Smaller of two binary floats."""
    return first if mpf_cmp(first, second) <= 0 else second


def dyadic(numerator: int, exponent: int) -> MpfValue:
    """The exact binary float numerator * 2^exponent."""
    return from_man_exp(numerator, exponent)


def make_enclosure(value: Fraction | int | str, config: PrecisionConfig) -> EnclosedReal:
    """Enclose an exact rational or decimal point of [0, 1].

    Args:
        value: A rational, an integer, or a string such as ``"1/3"`` or ``"0.5"``.
        config: Working precision.

    Returns:
        Enclosure of width at most 2^(1 - bits) containing ``value``.

    Raises:
        ValidationError: If the string cannot be parsed or the value is outside [0, 1].
    """
    fraction = _parse_fraction(value)
    if fraction < 0 or fraction > 1:
        raise ValidationError("Point must lie in [0, 1]", field="value", value=str(value))
    return EnclosedReal.exact(fraction, config.bits)


def named_constant(name: str, bits: int) -> EnclosedReal:
    """Enclosure of one of the named quadratic irrationals.

    ``golden`` is (1 + sqrt 5)/2, ``invgolden`` is (sqrt 5 - 1)/2 and
    ``sqrt2m1`` is sqrt 2 - 1.
    """
    return _named_constant(name, bits)


@lru_cache(maxsize=256)
def _named_constant(name: str, bits: int) -> EnclosedReal:
    guard = bits + 8
    if name == "sqrt2m1":
        lower = mpf_sub(mpf_sqrt(from_int(2), guard, round_floor), fone, bits, round_floor)
        upper = mpf_sub(mpf_sqrt(from_int(2), guard, round_ceiling), fone, bits, round_ceiling)
        return EnclosedReal(lower=lower, upper=upper, bits=bits)
    if name in {"golden", "invgolden"}:
        offset = fone if name == "golden" else from_int(-1)
        root_lower = mpf_sqrt(from_int(5), guard, round_floor)
        root_upper = mpf_sqrt(from_int(5), guard, round_ceiling)
        lower = mpf_shift(mpf_add(root_lower, offset, bits, round_floor), -1)
        upper = mpf_shift(mpf_add(root_upper, offset, bits, round_ceiling), -1)
        return EnclosedReal(lower=lower, upper=upper, bits=bits)
    raise ValidationError(f"Unknown named constant '{name}'", field="name", value=name)


def parse_point(text: str, bits: int) -> EnclosedReal:
    """Parse a point of [0, 1]: a rational, a decimal, or a named irrational.

    Args:
        text: ``"p/q"``, a decimal string, ``"sqrt2m1"`` or ``"invgolden"``.
        bits: Working precision.

    Returns:
        Enclosure of the point.
    """
    cleaned = text.strip()
    if cleaned in _NAMED_POINTS:
        return named_constant(cleaned, bits)
    return EnclosedReal.exact(_checked_unit_fraction(cleaned), bits)


def _checked_unit_fraction(text: str) -> Fraction:
    fraction = _parse_fraction(text)
    if fraction < 0 or fraction > 1:
        raise ValidationError("Point must lie in [0, 1]", field="value", value=text)
    return fraction


def _parse_fraction(value: Fraction | int | str) -> Fraction:
    if isinstance(value, Fraction | int):
        return Fraction(value)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as error:
        raise ValidationError(
            f"Cannot parse '{value}' as an exact number", field="value", value=value
        ) from error
