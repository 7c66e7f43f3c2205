"""Report models for entropy, Levy constant, property E and property M estimates."""

from enum import StrEnum
from itertools import pairwise

from pydantic import BaseModel, ConfigDict, Field, computed_field

from src.constants import LEVY_CONSTANT, LEVY_CONSTANT_FORMULA
from src.maps import OrbitStopReason
from src.types import ExactRational, SymbolString


class SeriesPoint(BaseModel):
    """One (n, value) entry of an estimator series."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    value: float


class EntropyReport(BaseModel):
    """Shannon-McMillan-Breiman estimates -(1/n) log mu(A^n(x)) at checkpoints.

    Attributes:
        map_name: The map.
        measure: Label of the measure the cylinders were measured with.
        closed_form: Reference entropy h(T).
        formula: Provenance of ``closed_form``.
        series: Estimates at n = 10, 100, ... and n_max.
        final: Estimate at the last checkpoint.
        relative_error: |final - h| / h; None when h is 0.
        achieved: Certified digits.
        stop_reason: Why the orbit stopped.
    """

    model_config = ConfigDict(frozen=True)

    map_name: str
    measure: str
    closed_form: float
    formula: str
    series: list[SeriesPoint]
    final: float
    relative_error: float | None
    achieved: int
    stop_reason: OrbitStopReason


class LevyReport(BaseModel):
    """Growth (1/n) log q_n of continued fraction denominators."""

    model_config = ConfigDict(frozen=True)

    requested: int
    achieved: int
    series: list[SeriesPoint]
    final: float
    reference: float = LEVY_CONSTANT
    formula: str = LEVY_CONSTANT_FORMULA
    relative_error: float
    fibonacci_bound_holds: bool
    stop_reason: OrbitStopReason


class PropertyEMethod(StrEnum):
    """How the good-atom mass was obtained."""

    ENUMERATION = "enumeration"
    SAMPLING = "sampling"


class GoodAtomMass(BaseModel):
    """Good-atom mass at one rank.

    Attributes:
        n: Cylinder rank.
        good_mass: mu-mass of rank-n cylinders with e^{-n(h+eps)} <= mu(A) <= e^{-n(h-eps)}.
        out_of_band_mass: Lebesgue mass of the remaining cylinders.
        envelope: (beta/(beta - 1)) e^{-eps n} for affine maps.
        cylinders: Cylinders enumerated or samples used.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    good_mass: float = Field(ge=0.0, le=1.0)
    out_of_band_mass: float = Field(ge=0.0)
    envelope: float | None = None
    cylinders: int = Field(ge=0)

    @computed_field
    @property
    def within_envelope(self) -> bool | None:
        """Whether the out-of-band mass respects the envelope."""
        if self.envelope is None:
            return None
        return self.out_of_band_mass <= self.envelope


class PropertyEReport(BaseModel):
    """Good-atom masses over a range of ranks and the fitted constant c0.

    ``c0`` is the smallest value with good_mass >= 1 - c0 / n on every tested rank.
    """

    model_config = ConfigDict(frozen=True)

    map_name: str
    epsilon: float = Field(gt=0.0)
    entropy: float
    method: PropertyEMethod
    samples: int | None = None
    excluded_samples: int = 0
    masses: list[GoodAtomMass]
    c0: float = Field(ge=0.0)


class FitStatus(StrEnum):
    """Outcome of an exponential fit."""

    EXPONENTIAL = "exponential"
    EXACT_ZERO = "exact_zero"
    NON_EXPONENTIAL = "non_exponential"
    INSUFFICIENT_RANGE = "insufficient decay range"


class ExponentialFit(BaseModel):
    """Least-squares fit log c_n = a + n log r over the usable range.

    Attributes:
        status: Whether a rate could be fitted.
        rate: Fitted r; None unless a fit was made.
        prefactor: Fitted e^a.
        r_squared: Coefficient of determination on the log values.
        first_n: First n of the usable range.
        last_n: Last n of the usable range.
        points_used: Points in the usable range.
        noise_floor: Values at or below 10 times this were masked.
        summable: Whether the series is summable on the evidence of the fit.
    """

    model_config = ConfigDict(frozen=True)

    status: FitStatus
    rate: float | None = None
    prefactor: float | None = None
    r_squared: float | None = None
    first_n: int | None = None
    last_n: int | None = None
    points_used: int = 0
    noise_floor: float = Field(ge=0.0)
    summable: bool


class MixingRoute(StrEnum):
    """How lambda(A ∩ T^-(n+l) B) is computed."""

    EXACT = "exact"
    HIGH_PRECISION = "high_precision"
    GRID = "grid"
    GAUSS_SPECTRAL = "gauss_spectral"
    GAUSS_PREIMAGE = "gauss_preimage"


class MixingReport(BaseModel):
    """Correlation series |lambda(A ∩ T^-(n+l) B) - lambda(A) mu(B)| with its fit.

    Attributes:
        map_name: The map.
        route: Computation route.
        cylinder: Digits of the cylinder A; its rank is l.
        target_lower: Left end of B.
        target_upper: Right end of B.
        cylinder_length: lambda(A).
        target_measure: mu(B).
        series: One entry per requested n.
        partial_sums: Running sums of the series.
        fit: Exponential fit of the series.
        tail_bound: Gauss routes: largest sup|g| sum_{j > J} 1/j^2 before the tail
            correction (spectral), or the omitted preimage mass (preimage).
        residual: Gauss routes: error bound on every correlation value.
    """

    model_config = ConfigDict(frozen=True)

    map_name: str
    route: MixingRoute
    cylinder: SymbolString
    target_lower: ExactRational
    target_upper: ExactRational
    cylinder_length: float
    target_measure: float
    series: list[SeriesPoint]
    partial_sums: list[float]
    fit: ExponentialFit
    tail_bound: float | None = None
    residual: float | None = None

    @property
    def rank(self) -> int:
        """Rank l of the cylinder A."""
        return len(self.cylinder)

    @computed_field
    @property
    def decreasing_from(self) -> int | None:
        """Smallest n from which the values above 10 times the noise floor strictly decrease."""
        kept = [point for point in self.series if point.value > 10 * self.fit.noise_floor]
        if not kept:
            return None
        start = kept[-1].n
        for earlier, later in reversed(list(pairwise(kept))):
            if later.value >= earlier.value:
                break
            start = earlier.n
        return start
