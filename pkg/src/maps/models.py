"""Map, partition and orbit models."""

from __future__ import annotations

import math
from enum import StrEnum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.constants import GOLDEN_RATIO
from src.interval import EnclosedReal, named_constant
from src.types import ExactRational, SymbolString

_NAMED_PARAMETERS = ("golden", "sqrt2m1")


class MapFamily(StrEnum):
    """Supported interval map families."""

    TIMES_B = "timesb"
    BETA = "beta"
    LINEAR_MOD_ONE = "linmod1"
    GAUSS = "gauss"
    ROTATION = "rotation"


class OrbitStopReason(StrEnum):
    """Why an orbit stopped emitting certified digits."""

    COMPLETED = "completed"
    STRADDLE = "straddle"
    PRECISION_EXHAUSTED = "precision_exhausted"
    TERMINATED = "terminated"


def parse_parameter(text: str) -> Fraction | None:
    """Exact value of a decimal parameter, or None for a named irrational."""
    if text in _NAMED_PARAMETERS:
        return None
    return Fraction(text)


def parameter_enclosure(text: str, bits: int) -> EnclosedReal:
    """Enclosure of a map parameter at the given precision.

    ``golden`` means (1 + sqrt 5)/2 for slopes; rotations use its fractional
    part, see :meth:`MapSpec.alpha_enclosure`.
    """
    if text == "golden":
        return named_constant("golden", bits)
    if text == "sqrt2m1":
        return named_constant("sqrt2m1", bits)
    return EnclosedReal.exact(Fraction(text), bits)


class MapSpec(BaseModel):
    """One interval map with its parameters.

    Parameters are stored as text ("2.5", "golden") so the model stays exact
    and hashable; enclosures are produced on demand at any precision.

    Attributes:
        family: Map family.
        base: Integer base of T_b.
        beta: Slope of beta and linear mod one maps.
        gamma: Offset of linear mod one maps.
        alpha: Rotation number.
    """

    model_config = ConfigDict(frozen=True)

    family: MapFamily
    base: int | None = Field(default=None, ge=2)
    beta: str | None = None
    gamma: str | None = None
    alpha: str | None = None

    @model_validator(mode="after")
    def validate_parameters(self) -> MapSpec:
        """Check the parameter ranges of each family."""
        problem = self._parameter_problem()
        if problem is not None:
            raise ValueError(problem)
        return self

    def _parameter_problem(self) -> str | None:
        match self.family:
            case MapFamily.TIMES_B:
                return "timesb requires an integer base >= 2" if self.base is None else None
            case MapFamily.BETA:
                if self.beta is None:
                    return "beta requires a slope"
                slope = parse_parameter(self.beta)
                if slope is not None and (slope <= 1 or slope.denominator == 1):
                    return "beta must be a non-integer greater than 1"
                return None
            case MapFamily.LINEAR_MOD_ONE:
                return self._linear_problem()
            case MapFamily.ROTATION:
                if self.alpha is None:
                    return "rotation requires alpha"
                rotation = parse_parameter(self.alpha)
                if rotation is not None and not 0 < rotation < 1:
                    return "rotation alpha must lie in (0, 1)"
                return None
            case MapFamily.GAUSS:
                return None

    def _linear_problem(self) -> str | None:
        if self.beta is None:
            return "linmod1 requires a slope"
        slope = parse_parameter(self.beta)
        offset = parse_parameter(self.gamma or "0")
        if offset is None or not 0 <= offset < 1:
            return "gamma must be a decimal in [0, 1)"
        if slope is not None and slope <= 1:
            return "linmod1 slope must exceed 1"
        if (slope is None or slope < 2) and offset != 0:
            return "linmod1 with 1 < beta < 2 requires gamma = 0"
        return None

    # -- parameter views ----------------------------------------------------

    @property
    def is_affine(self) -> bool:
        """Whether the map is x -> slope * x + shift mod 1."""
        return self.family in {MapFamily.TIMES_B, MapFamily.BETA, MapFamily.LINEAR_MOD_ONE}

    @property
    def has_exact_parameters(self) -> bool:
        """Whether every parameter is rational."""
        if self.family == MapFamily.TIMES_B or self.family == MapFamily.GAUSS:
            return True
        if self.family == MapFamily.ROTATION:
            return parse_parameter(self.alpha or "") is not None
        return self.slope_fraction() is not None

    def slope_fraction(self) -> Fraction | None:
        """Exact slope of an affine map, None when irrational."""
        if self.family == MapFamily.TIMES_B:
            return Fraction(self.base or 0)
        if self.family in {MapFamily.BETA, MapFamily.LINEAR_MOD_ONE}:
            return parse_parameter(self.beta or "")
        return None

    def shift_fraction(self) -> Fraction:
        """Exact offset of an affine map."""
        if self.family == MapFamily.LINEAR_MOD_ONE:
            return Fraction(self.gamma or "0")
        return Fraction(0)

    def slope_float(self) -> float:
        """Slope of an affine map as a float."""
        if self.family == MapFamily.TIMES_B:
            return float(self.base or 0)
        exact = self.slope_fraction()
        if exact is not None:
            return float(exact)
        return GOLDEN_RATIO

    def slope_enclosure(self, bits: int) -> EnclosedReal:
        """Slope of an affine map at the given precision."""
        if self.family == MapFamily.TIMES_B:
            return EnclosedReal.exact(self.base or 0, bits)
        return parameter_enclosure(self.beta or "", bits)

    def shift_enclosure(self, bits: int) -> EnclosedReal:
        """Offset of an affine map at the given precision."""
        return EnclosedReal.exact(self.shift_fraction(), bits)

    def alpha_enclosure(self, bits: int) -> EnclosedReal:
        """Rotation number at the given precision; ``golden`` means phi - 1."""
        if self.alpha == "golden":
            return named_constant("invgolden", bits)
        return parameter_enclosure(self.alpha or "", bits)

    # -- alphabet -----------------------------------------------------------

    @property
    def symbol_count(self) -> int | None:
        """Number of partition cells; None for the countable Gauss partition."""
        if self.family == MapFamily.GAUSS:
            return None
        if self.family == MapFamily.ROTATION:
            return 1
        if self.family == MapFamily.TIMES_B:
            return self.base
        slope = self.slope_fraction()
        if slope is None:
            return math.floor(self.slope_float()) + 1
        return math.ceil(slope + self.shift_fraction())

    @property
    def first_symbol(self) -> int:
        """Smallest symbol of the partition."""
        return 1 if self.family == MapFamily.GAUSS else 0

    def symbols(self, limit: int | None = None) -> list[int]:
        """Symbols in increasing order; ``limit`` caps the Gauss partition."""
        if self.symbol_count is None:
            return list(range(1, (limit or 0) + 1))
        return list(range(self.symbol_count))

    def has_symbol(self, symbol: int) -> bool:
        """Whether ``symbol`` indexes a partition cell."""
        if self.symbol_count is None:
            return symbol >= 1
        return 0 <= symbol < self.symbol_count

    def expansion_bits_per_step(self) -> float:
        """Precision consumed per step, in bits."""
        from src.maps.invariants import expansion_exponent

        return expansion_exponent(self)

    @property
    def name(self) -> str:
        """Grammar string of the map."""
        from src.maps.grammar import format_map

        return format_map(self)

    def __str__(self) -> str:
        return self.name


class PartitionCell(BaseModel):
    """One cell of a generating partition.

    Exact endpoints are set when the map parameters are rational; the float
    endpoints are always present.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    symbol: int
    lower: float
    upper: float
    exact_lower: ExactRational | None = None
    exact_upper: ExactRational | None = None
    left_closed: bool = True
    right_closed: bool = False
    trivial: bool = False

    @property
    def width(self) -> float:
        """Cell length."""
        return self.upper - self.lower


class OrbitStep(BaseModel):
    """The point T^index x and the certified symbol of the cell it lies in."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    index: int
    point: EnclosedReal
    symbol: int


class DigitString(BaseModel):
    """Certified digits of a point under a map.

    Attributes:
        map: The map that produced the digits.
        symbols: Certified digits r_1, r_2, ...
        requested: Number of digits that were asked for.
        stop_reason: Why emission stopped.
    """

    model_config = ConfigDict(frozen=True)

    map: MapSpec
    symbols: SymbolString
    requested: int = Field(ge=0)
    stop_reason: OrbitStopReason

    @property
    def valid_length(self) -> int:
        """Number of certified digits."""
        return len(self.symbols)

    @property
    def complete(self) -> bool:
        """Whether every requested digit was certified."""
        return self.valid_length >= self.requested
