"""Cylinder and convergent models."""

from __future__ import annotations

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from src.interval import EnclosedReal
from src.maps import MapSpec
from src.types import ExactRational, SymbolString


class CylinderStatus(StrEnum):
    """Outcome of deciding whether a cylinder is empty.

    ``degenerate`` means the enclosures could not separate the endpoints but
    certify a width below the resolution; such cylinders are treated as empty.
    """

    NONEMPTY = "nonempty"
    EMPTY = "empty"
    DEGENERATE = "degenerate"
    AMBIGUOUS = "ambiguous"


class Cylinder(BaseModel):
    """The set of points whose first digits are ``symbols``.

    Attributes:
        map: The map whose partition defines the digits.
        symbols: The digit string.
        status: Emptiness decision.
        lower: Left endpoint as a float.
        upper: Right endpoint as a float.
        exact_lower: Exact left endpoint when available.
        exact_upper: Exact right endpoint when available.
        left_closed: Whether the left endpoint belongs to the cylinder.
        right_closed: Whether the right endpoint belongs to the cylinder.
        log_length: Natural log of the length, valid far below float range.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    map: MapSpec
    symbols: SymbolString
    status: CylinderStatus
    lower: float
    upper: float
    exact_lower: ExactRational | None = None
    exact_upper: ExactRational | None = None
    left_closed: bool = True
    right_closed: bool = False
    log_length: float
    enclosed_lower: EnclosedReal | None = Field(default=None, exclude=True)
    enclosed_upper: EnclosedReal | None = Field(default=None, exclude=True)

    @property
    def empty(self) -> bool:
        """Whether the cylinder contains no points."""
        return self.status in {CylinderStatus.EMPTY, CylinderStatus.DEGENERATE}

    @property
    def is_exact(self) -> bool:
        """Whether both endpoints are exact rationals."""
        return self.exact_lower is not None and self.exact_upper is not None

    @property
    def rank(self) -> int:
        """Length of the digit string."""
        return len(self.symbols)

    @property
    def length(self) -> float:
        """Lebesgue length as a float."""
        if self.empty:
            return 0.0
        if self.exact_lower is not None and self.exact_upper is not None:
            return float(self.exact_upper - self.exact_lower)
        return max(self.upper - self.lower, 0.0)


class ConvergentPair(BaseModel):
    """The n-th continued fraction convergent p/q and its predecessor."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=1)
    p: int
    q: int
    previous_p: int
    previous_q: int
