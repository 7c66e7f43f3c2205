"""Piecewise-constant functions under the transfer operator of an affine map.

The same code runs on ``fractions.Fraction`` (exact, for rational parameters)
and on ``mpmath`` numbers of a private context (for irrational slopes): both
support the field operations and comparisons used here.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import mpmath

from src.exceptions import UnsupportedMapError, ValidationError
from src.maps import MapSpec
from src.types import SymbolString

Scalar = Any


@dataclass(frozen=True)
class PiecewiseConstant:
    """f = values[i] on [breakpoints[i], breakpoints[i + 1])."""

    breakpoints: tuple[Scalar, ...]
    values: tuple[Scalar, ...]

    @classmethod
    def indicator(
        cls, lower: Scalar, upper: Scalar, zero: Scalar, one: Scalar
    ) -> PiecewiseConstant:
        """1 on [lower, upper), 0 elsewhere on [0, 1)."""
        edges = [zero, lower, upper, one]
        levels = [zero, one, zero]
        pairs = [
            (edges[index], levels[index])
            for index in range(3)
            if edges[index + 1] > edges[index]
        ]
        return cls(
            breakpoints=(*(edge for edge, _ in pairs), one),
            values=tuple(level for _, level in pairs),
        )

    @classmethod
    def constant(cls, value: Scalar, zero: Scalar, one: Scalar) -> PiecewiseConstant:
        return cls(breakpoints=(zero, one), values=(value,))

    @property
    def piece_count(self) -> int:
        return len(self.values)

    def value_at(self, point: Scalar) -> Scalar:
        index = bisect.bisect_right(self.breakpoints, point) - 1
        return self.values[min(max(index, 0), len(self.values) - 1)]

    def integral(self, lower: Scalar, upper: Scalar) -> Scalar:
        """Integral over [lower, upper]."""
        total = self.values[0] * 0
        for index, value in enumerate(self.values):
            start = max(self.breakpoints[index], lower)
            end = min(self.breakpoints[index + 1], upper)
            if end > start:
                total += (end - start) * value
        return total

    def distance(self, other: PiecewiseConstant) -> Scalar:
        """sup |f - g| over [0, 1)."""
        edges = sorted({*self.breakpoints, *other.breakpoints})
        return max(
            abs(self.value_at(middle) - other.value_at(middle))
            for middle in ((start + end) / 2 for start, end in zip(edges, edges[1:], strict=False))
        )


@dataclass(frozen=True)
class AffineBranch:
    """Branch with digit ``symbol``: T x = slope x + shift - symbol, image [lower, upper)."""

    symbol: int
    image_lower: Scalar
    image_upper: Scalar


@dataclass(frozen=True)
class AffineTransfer:
    """Transfer operator (L f)(y) = sum_d f((y + d - shift) / slope) / slope.

    Attributes:
        slope: beta.
        shift: gamma.
        zero: Additive identity of the number type.
        one: Multiplicative identity of the number type.
        tolerance: Breakpoints closer than this are merged; 0 for exact arithmetic.
        branches: Inverse branches with nonempty image.
    """

    slope: Scalar
    shift: Scalar
    zero: Scalar
    one: Scalar
    tolerance: Scalar
    branches: tuple[AffineBranch, ...]

    @classmethod
    def for_map(
        cls, spec: MapSpec, context: mpmath.MPContext | None = None
    ) -> AffineTransfer:
        """Operator of an affine map in exact arithmetic, or in ``context`` when given.

        Raises:
            UnsupportedMapError: For non-affine maps, or irrational slopes without a context.
        """
        if not spec.is_affine:
            raise UnsupportedMapError(f"{spec.name} has no finite affine branch family")
        exact_slope = spec.slope_fraction()
        if context is None:
            if exact_slope is None:
                raise UnsupportedMapError(f"{spec.name} has an irrational slope")
            slope, shift, zero, one = exact_slope, spec.shift_fraction(), Fraction(0), Fraction(1)
            tolerance = Fraction(0)
        else:
            slope = _context_slope(spec, exact_slope, context)
            shift = _context_fraction(spec.shift_fraction(), context)
            zero, one = context.mpf(0), context.mpf(1)
            tolerance = context.ldexp(1, -(context.prec // 2))
        branches = []
        for symbol in spec.symbols():
            image_lower = max(zero, shift - symbol)
            image_upper = min(one, slope + shift - symbol)
            if image_upper > image_lower:
                branches.append(AffineBranch(symbol, image_lower, image_upper))
        return cls(slope, shift, zero, one, tolerance, tuple(branches))

    def indicator(self, lower: Scalar, upper: Scalar) -> PiecewiseConstant:
        return PiecewiseConstant.indicator(lower, upper, self.zero, self.one)

    def constant(self, value: Scalar) -> PiecewiseConstant:
        return PiecewiseConstant.constant(value, self.zero, self.one)

    def cylinder_bounds(self, symbols: SymbolString) -> tuple[Scalar, Scalar]:
        """Endpoints of the cylinder of ``symbols`` by backward refinement.

        Raises:
            ValidationError: If the cylinder is empty.
        """
        lower, upper = self.zero, self.one
        for symbol in reversed(symbols):
            lower = max((lower + symbol - self.shift) / self.slope, self.zero)
            upper = min((upper + symbol - self.shift) / self.slope, self.one)
            if upper - lower <= self.tolerance:
                raise ValidationError(
                    "Cylinder is empty", field="cylinder", value=list(symbols)
                )
        return lower, upper

    def apply(self, function: PiecewiseConstant) -> PiecewiseConstant:
        """One application of the operator."""
        candidates = [self.zero, self.one]
        for branch in self.branches:
            candidates.extend([branch.image_lower, branch.image_upper])
            for edge in function.breakpoints:
                image = self.slope * edge + self.shift - branch.symbol
                if branch.image_lower < image < branch.image_upper:
                    candidates.append(image)
        edges = self._merged(sorted(candidates))
        values = []
        for start, end in zip(edges, edges[1:], strict=False):
            middle = (start + end) / 2
            total = self.zero
            for branch in self.branches:
                if branch.image_lower <= middle < branch.image_upper:
                    total += function.value_at((middle + branch.symbol - self.shift) / self.slope)
            values.append(total / self.slope)
        return _coalesced(edges, values)

    def _merged(self, edges: list[Scalar]) -> list[Scalar]:
        merged = [edges[0]]
        for edge in edges[1:]:
            if edge - merged[-1] > self.tolerance:
                merged.append(edge)
        merged[-1] = self.one
        return merged


def _coalesced(edges: list[Scalar], values: list[Scalar]) -> PiecewiseConstant:
    """Drop breakpoints between equal values."""
    kept_edges = [edges[0]]
    kept_values = [values[0]]
    for edge, value in zip(edges[1:-1], values[1:], strict=True):
        if value != kept_values[-1]:
            kept_edges.append(edge)
            kept_values.append(value)
    kept_edges.append(edges[-1])
    return PiecewiseConstant(breakpoints=tuple(kept_edges), values=tuple(kept_values))


def _context_fraction(value: Fraction, context: mpmath.MPContext) -> Scalar:
    return context.mpf(value.numerator) / value.denominator


def _context_slope(
    spec: MapSpec, exact_slope: Fraction | None, context: mpmath.MPContext
) -> Scalar:
    if exact_slope is not None:
        return _context_fraction(exact_slope, context)
    if spec.beta == "golden":
        return (1 + context.sqrt(5)) / 2
    raise UnsupportedMapError(f"Unknown slope {spec.beta!r}")


def working_context(bits: int) -> mpmath.MPContext:
    """A private mpmath context at ``bits`` of precision."""
    context = mpmath.MPContext()
    context.prec = bits
    return context


def noise_floor(context: mpmath.MPContext | None) -> float:
    """2^-(prec/2) for a working context, 0 for exact arithmetic."""
    if context is None:
        return 0.0
    return math.ldexp(1.0, -(context.prec // 2))
