"""Measure, density and inverse-branch models."""

from __future__ import annotations

from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, computed_field, model_validator

from src.maps import MapSpec


class MeasureKind(StrEnum):
    """Invariant measures carried by reports."""

    LEBESGUE = "lebesgue"
    GAUSS = "gauss"
    NUMERIC_INVARIANT = "numeric_invariant"


class DensityTable(BaseModel):
    """Piecewise-constant density dmu/dlambda on a uniform grid of [0, 1].

    Attributes:
        map_name: Map the density is invariant for.
        grid_size: Number of bins.
        values: Density value on each bin.
        residual: Last sup-norm change of the power iteration.
        iterations: Power iteration steps taken.
        converged: Whether the residual reached the tolerance.
        renyi_lower: Lower density bound 1 - 1/beta, when it applies.
        renyi_upper: Upper density bound 1/(1 - 1/beta), when it applies.
    """

    model_config = ConfigDict(frozen=True)

    map_name: str
    grid_size: int = Field(ge=1)
    values: tuple[float, ...]
    residual: float = 0.0
    iterations: int = 0
    converged: bool = True
    renyi_lower: float | None = None
    renyi_upper: float | None = None

    _array: np.ndarray = PrivateAttr()
    _cumulative: np.ndarray = PrivateAttr()

    @model_validator(mode="after")
    def validate_length(self) -> DensityTable:
        """Values must cover every bin."""
        if len(self.values) != self.grid_size:
            error_message = f"expected {self.grid_size} values, got {len(self.values)}"
            raise ValueError(error_message)
        return self

    def model_post_init(self, context: Any, /) -> None:
        """Cache the array form and the cumulative integral."""
        self._array = np.asarray(self.values, dtype=float)
        self._cumulative = np.concatenate(([0.0], np.cumsum(self._array) / self.grid_size))

    @computed_field
    @property
    def lower_bound(self) -> float:
        """Smallest density value."""
        return float(self._array.min())

    @computed_field
    @property
    def upper_bound(self) -> float:
        """Largest density value."""
        return float(self._array.max())

    @computed_field
    @property
    def within_renyi_bounds(self) -> bool | None:
        """Whether every value respects the Renyi envelope, None when it does not apply."""
        if self.renyi_lower is None or self.renyi_upper is None:
            return None
        slack = max(self.residual, 1e-12)
        above = self.lower_bound >= self.renyi_lower - slack
        return above and self.upper_bound <= self.renyi_upper + slack

    @property
    def bin_width(self) -> float:
        """Width of one bin."""
        return 1.0 / self.grid_size

    def as_array(self) -> np.ndarray:
        """Density values as a read-only array."""
        view = self._array.view()
        view.flags.writeable = False
        return view

    def value_at(self, point: float) -> float:
        """Density on the bin containing ``point``."""
        index = min(max(int(point * self.grid_size), 0), self.grid_size - 1)
        return float(self._array[index])

    def cumulative(self, point: float) -> float:
        """Integral of the density over [0, point]."""
        clipped = min(max(point, 0.0), 1.0)
        scaled = clipped * self.grid_size
        index = min(int(scaled), self.grid_size - 1)
        partial = (scaled - index) / self.grid_size
        return float(self._cumulative[index] + self._array[index] * partial)

    def integral(self, lower: float, upper: float) -> float:
        """Integral of the density over [lower, upper]."""
        if upper <= lower:
            return 0.0
        return self.cumulative(upper) - self.cumulative(lower)


class MeasureSpec(BaseModel):
    """An invariant probability measure on [0, 1]."""

    model_config = ConfigDict(frozen=True)

    kind: MeasureKind
    map: MapSpec | None = None
    density: DensityTable | None = None

    @model_validator(mode="after")
    def validate_numeric(self) -> MeasureSpec:
        """A numeric invariant measure needs an affine map and its density."""
        if self.kind == MeasureKind.NUMERIC_INVARIANT:
            if self.density is None or self.map is None:
                error_message = "numeric invariant measures need a map and a density table"
                raise ValueError(error_message)
            if not self.map.is_affine:
                error_message = f"no numeric invariant density for {self.map.name}"
                raise ValueError(error_message)
        return self

    @property
    def label(self) -> str:
        """Short description used in reports."""
        if self.kind == MeasureKind.NUMERIC_INVARIANT and self.map is not None:
            return f"invariant[{self.map.name}]"
        return str(self.kind)


class InverseBranch(BaseModel):
    """Inverse of one branch of an interval map.

    Affine branches are y -> (y + symbol - shift) / slope; Gauss branches are
    y -> 1 / (symbol + y). The branch is defined on [image_lower, image_upper).
    """

    model_config = ConfigDict(frozen=True)

    symbol: int
    slope: float
    shift: float = 0.0
    image_lower: float = 0.0
    image_upper: float = 1.0
    gauss: bool = False

    def __call__(self, point: float) -> float:
        """Preimage of ``point`` in this branch's cell."""
        if self.gauss:
            return 1.0 / (self.symbol + point)
        return (point + self.symbol - self.shift) / self.slope

    def derivative(self, point: float) -> float:
        """Absolute derivative of the inverse branch at ``point``."""
        if self.gauss:
            return 1.0 / (self.symbol + point) ** 2
        return 1.0 / self.slope


class GaussFixedPointCheck(BaseModel):
    """Defect of the truncated Gauss transfer operator on the Gauss density."""

    model_config = ConfigDict(frozen=True)

    branch_cap: int
    max_defect: float
    tail_bound: float
    points_checked: int

    @computed_field
    @property
    def within_tail_bound(self) -> bool:
        """Whether the defect is explained by the truncated branches."""
        return self.max_defect <= self.tail_bound
