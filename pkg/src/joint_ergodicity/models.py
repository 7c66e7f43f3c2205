"""Observable, grid and joint-ergodicity report models."""

from __future__ import annotations

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.maps import MapFamily, MapSpec
from src.types import ExactRational, SymbolString, Verdict


class ObservableKind(StrEnum):
    """Bounded functions that can be averaged along an orbit."""

    INTERVAL = "interval"
    CYLINDER = "cylinder"
    PIECEWISE = "piecewise"


class ObservableSpec(BaseModel):
    """A bounded function f_i composed with the orbit of one map.

    Attributes:
        map: The map T_i.
        kind: Indicator of [lower, upper), indicator of a cylinder, or a
            piecewise-constant function.
        lower: Left end of the indicator interval.
        upper: Right end of the indicator interval.
        symbols: Digit string of the indicator cylinder.
        breakpoints: Increasing interior breakpoints of a piecewise function.
        values: One value per piece, ``len(breakpoints) + 1`` in total.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    map: MapSpec
    kind: ObservableKind
    lower: ExactRational | None = None
    upper: ExactRational | None = None
    symbols: SymbolString = ()
    breakpoints: tuple[ExactRational, ...] = ()
    values: tuple[float, ...] = ()

    @model_validator(mode="after")
    def validate_shape(self) -> ObservableSpec:
        """Each kind needs its own parameters."""
        problem = self._shape_problem()
        if problem is not None:
            raise ValueError(problem)
        return self

    def _shape_problem(self) -> str | None:
        match self.kind:
            case ObservableKind.INTERVAL:
                if self.lower is None or self.upper is None:
                    return "interval observables need lower and upper"
                if not 0 <= self.lower <= self.upper <= 1:
                    return "interval must satisfy 0 <= lower <= upper <= 1"
            case ObservableKind.CYLINDER:
                if not self.symbols:
                    return "cylinder observables need symbols"
                if self.map.family == MapFamily.ROTATION:
                    return "rotations have no cylinders"
            case ObservableKind.PIECEWISE:
                if len(self.values) != len(self.breakpoints) + 1:
                    return "piecewise observables need one more value than breakpoints"
                if list(self.breakpoints) != sorted(self.breakpoints):
                    return "breakpoints must increase"
        return None

    @property
    def is_indicator(self) -> bool:
        """Whether f takes only the values 0 and 1."""
        return self.kind != ObservableKind.PIECEWISE

    @property
    def label(self) -> str:
        """Printable description."""
        match self.kind:
            case ObservableKind.INTERVAL:
                return f"{self.map.name}:1[{self.lower},{self.upper})"
            case ObservableKind.CYLINDER:
                digits = ",".join(str(symbol) for symbol in self.symbols)
                return f"{self.map.name}:1C({digits})"
            case ObservableKind.PIECEWISE:
                return f"{self.map.name}:piecewise[{len(self.values)}]"


class Checkpoint(BaseModel):
    """Running average after ``index`` terms."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=1)
    average: float
    z: float | None


class JointAverageReport(BaseModel):
    """Running averages of a product of observables along joint orbits.

    Attributes:
        map_names: Map of each observable.
        observables: Observable labels.
        requested: Requested number of terms N.
        achieved: Terms certified for every observable.
        independent_points: Whether each observable used its own point.
        checkpoints: Ten running averages up to ``achieved``.
        final: Average over all certified terms.
        target: Product of the integrals of the observables.
        z: Final standardized deviation.
        verdict: PASS when |z| is within the gate.
    """

    model_config = ConfigDict(frozen=True)

    map_names: list[str]
    observables: list[str]
    requested: int
    achieved: int
    independent_points: bool = False
    checkpoints: list[Checkpoint]
    final: float
    target: float
    z: float | None
    verdict: Verdict


class BoxGrid(BaseModel):
    """Counts of joint orbit points in the cells of a g^k grid.

    ``counts`` is flattened in row-major order over the k axes.
    """

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(ge=1)
    bins: int = Field(ge=1)
    counts: list[int]
    recorded: int
    excluded: int

    @model_validator(mode="after")
    def validate_counts(self) -> BoxGrid:
        """Counts cover every cell and add up to the recorded points."""
        if len(self.counts) != self.bins**self.dimension:
            error_message = "grid needs one count per cell"
            raise ValueError(error_message)
        if sum(self.counts) != self.recorded:
            error_message = "cell counts must add up to the recorded points"
            raise ValueError(error_message)
        return self


class EquidistributionReport(BaseModel):
    """Box-counting test of joint equidistribution."""

    model_config = ConfigDict(frozen=True)

    map_names: list[str]
    requested: int
    grid: BoxGrid
    sup_deviation: float
    gate_factor: float
    threshold: float
    excluded_fraction: float
    valid: bool
    verdict: Verdict


class EntropyEntry(BaseModel):
    """Closed-form entropy of one map."""

    model_config = ConfigDict(frozen=True)

    map_name: str
    entropy: float
    formula: str


class EntropyPair(BaseModel):
    """Two maps whose entropies agree within tolerance."""

    model_config = ConfigDict(frozen=True)

    first: str
    second: str
    difference: float


class EntropyDistinctReport(BaseModel):
    """Whether the maps of a joint experiment have pairwise distinct entropies."""

    model_config = ConfigDict(frozen=True)

    entries: list[EntropyEntry]
    collisions: list[EntropyPair]
    verdict: Verdict
    warning: str | None = None
