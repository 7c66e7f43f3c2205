"""Experiment manifests and run records."""

from __future__ import annotations

import hashlib
import json
from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.constants import REPORT_SCHEMA_VERSION, SEED_BITS
from src.entropy_mixing import MixingRoute
from src.exceptions import MapGrammarError
from src.joint_ergodicity import EntropyDistinctReport, ObservableKind
from src.maps import MapSpec, parse_map
from src.normality import EquivalenceForm
from src.types import ExactRational, JsonObject, SymbolString, Verdict


class Command(StrEnum):
    """Experiment kinds, one per front-end subcommand."""

    EXPAND = "expand"
    CYLINDER = "cylinder"
    MEASURE = "measure"
    DENSITY = "density"
    NORMALITY = "normality"
    JOINT = "joint"
    EQUIDIST = "equidist"
    ENTROPY = "entropy"
    LEVY = "levy"
    PROPE = "prope"
    MIXING = "mixing"
    EQUIVALENCE = "equivalence"


# Commands that run once per seed or explicit point
PER_POINT_COMMANDS = frozenset(
    {
        Command.EXPAND,
        Command.NORMALITY,
        Command.JOINT,
        Command.EQUIDIST,
        Command.ENTROPY,
        Command.LEVY,
        Command.EQUIVALENCE,
    }
)


class OutputFormat(StrEnum):
    """Payload encodings."""

    JSON = "json"
    CSV = "csv"


class GateOverrides(BaseModel):
    """Verdict thresholds; unset fields fall back to the settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    gate_sigma: float | None = Field(default=None, gt=0)
    outlier_sigma: float | None = Field(default=None, gt=0)
    outliers_per_hundred: int | None = Field(default=None, ge=0)
    min_pass_rate: float | None = Field(default=None, ge=0, le=1)
    max_excluded_fraction: float | None = Field(default=None, ge=0, le=1)
    relative_tolerance: float | None = Field(default=None, gt=0)


class ObservableInput(BaseModel):
    """Observable of a joint average; attached to the map at the same position."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ObservableKind
    lower: ExactRational | None = None
    upper: ExactRational | None = None
    symbols: SymbolString = ()
    breakpoints: tuple[ExactRational, ...] = ()
    values: tuple[float, ...] = ()


class ExperimentManifest(BaseModel):
    """Everything a run needs; identical manifests give identical payloads.

    Attributes:
        command: What to run.
        maps: Map grammar strings, e.g. ``"timesb:2"`` or ``"beta:golden"``.
        seeds: 64-bit seeds of sampled points.
        points: Explicit points: ``"p/q"``, decimals, ``sqrt2m1`` or ``invgolden``.
        count: Orbit length or window count N.
        n_max: Deepest rank of entropy and Levy series.
        precision: Working bits, or ``"auto"`` to size them from the run.
        output: Payload encoding.
        gates: Verdict thresholds.
        patterns: One pattern per map for joint reports.
        max_pattern_length: Longest sliding pattern.
        symbol_cap: Gauss digits tracked individually.
        observables: One observable per map for joint averages.
        independent_points: Feed map i with point i instead of a shared point.
        bins: Bins per axis of equidistribution grids.
        cylinder: Digits of a cylinder.
        rank: Rank of cylinder enumeration.
        target: Interval [lower, upper) for measure and mixing runs.
        lags: Lags n of a mixing series.
        route: Mixing computation route.
        tail_tolerance: Largest accepted error bound of the Gauss mixing routes.
        epsilon: Property E band half-width.
        ranks: Property E ranks.
        samples: Property E sample count for countable partitions.
        forms: Equivalence forms to run; all applicable forms when empty.
        grid_size: Density grid size.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    command: Command
    maps: list[str] = Field(min_length=1)
    seeds: list[int] = Field(default_factory=list)
    points: list[str] = Field(default_factory=list)
    count: int | None = Field(default=None, ge=1, alias="N")
    n_max: int | None = Field(default=None, ge=1)
    precision: int | Literal["auto"] = "auto"
    output: OutputFormat = OutputFormat.JSON
    gates: GateOverrides = Field(default_factory=GateOverrides)
    patterns: list[SymbolString] = Field(default_factory=list)
    max_pattern_length: int = Field(default=2, ge=1)
    symbol_cap: int | None = Field(default=None, ge=2)
    observables: list[ObservableInput] = Field(default_factory=list)
    independent_points: bool = False
    bins: int = Field(default=10, ge=1)
    cylinder: SymbolString = ()
    rank: int | None = Field(default=None, ge=1)
    target: tuple[ExactRational, ExactRational] | None = None
    lags: list[int] = Field(default_factory=list)
    route: MixingRoute | None = None
    tail_tolerance: float | None = Field(default=None, gt=0)
    epsilon: float | None = Field(default=None, gt=0)
    ranks: list[int] = Field(default_factory=list)
    samples: int = Field(default=1000, ge=1)
    forms: list[EquivalenceForm] = Field(default_factory=list)
    grid_size: int | None = Field(default=None, ge=10)

    @field_validator("maps")
    @classmethod
    def validate_maps(cls, value: list[str]) -> list[str]:
        """Every entry must parse; the canonical spelling is kept."""
        try:
            return [parse_map(text).name for text in value]
        except MapGrammarError as error:
            raise ValueError(error.message) from error

    @field_validator("seeds", mode="before")
    @classmethod
    def expand_seed_count(cls, value: object) -> object:
        """A bare count n stands for seeds 0..n-1."""
        if isinstance(value, int) and not isinstance(value, bool):
            return list(range(value))
        return value

    @field_validator("seeds")
    @classmethod
    def validate_seeds(cls, value: list[int]) -> list[int]:
        """Seeds are unsigned 64-bit integers."""
        for seed in value:
            if not 0 <= seed < 2**SEED_BITS:
                error_message = f"seed {seed} is outside [0, 2^{SEED_BITS})"
                raise ValueError(error_message)
        return value

    @field_validator("precision")
    @classmethod
    def validate_precision(cls, value: int | str) -> int | str:
        """Explicit precision must be at least 64 bits."""
        if isinstance(value, int) and value < 64:
            error_message = f"precision must be 'auto' or at least 64 bits, got {value}"
            raise ValueError(error_message)
        return value

    @model_validator(mode="after")
    def validate_command_inputs(self) -> ExperimentManifest:
        """Each command needs its own inputs."""
        problem = self._input_problem()
        if problem is not None:
            raise ValueError(problem)
        return self

    def _input_problem(self) -> str | None:
        if self.command in PER_POINT_COMMANDS and not (self.seeds or self.points):
            return f"{self.command} needs seeds or points"
        if self.command in {Command.ENTROPY, Command.LEVY} and self.n_max is None:
            return f"{self.command} needs n_max"
        needs_count = PER_POINT_COMMANDS - {Command.ENTROPY, Command.LEVY}
        if self.command in needs_count and self.count is None:
            return f"{self.command} needs N"
        if self.command == Command.JOINT:
            if self.observables and len(self.observables) != len(self.maps):
                return "joint needs one observable per map"
            if not self.observables and len(self.patterns) != len(self.maps):
                return "joint needs one pattern per map"
        if self.command == Command.MIXING and not (self.cylinder and self.target and self.lags):
            return "mixing needs cylinder, target and lags"
        if self.command == Command.MEASURE and self.target is None:
            return "measure needs a target interval"
        if self.command == Command.PROPE and (self.epsilon is None or not self.ranks):
            return "prope needs epsilon and ranks"
        if self.command == Command.CYLINDER and not (self.cylinder or self.rank):
            return "cylinder needs a digit string or a rank"
        return None

    @property
    def map_specs(self) -> list[MapSpec]:
        """Parsed maps."""
        return [parse_map(text) for text in self.maps]

    @property
    def starts(self) -> list[str]:
        """Labels of the run's starting points: seeds first, then explicit points."""
        return [f"seed:{seed}" for seed in self.seeds] + [f"x:{text}" for text in self.points]

    def canonical_json(self) -> str:
        """Canonical JSON text: sorted keys, no whitespace, defaults included."""
        return json.dumps(
            self.model_dump(mode="json", by_alias=True), sort_keys=True, separators=(",", ":")
        )

    def manifest_hash(self) -> str:
        """SHA-256 of the canonical JSON."""
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


class StartResult(BaseModel):
    """Outcome for one seed or explicit point; failures are recorded, not raised."""

    model_config = ConfigDict(frozen=True)

    start: str
    verdict: Verdict
    report: JsonObject | None = None
    error: JsonObject | None = None


class Aggregate(BaseModel):
    """Deterministic fold of the per-start results in start order.

    Attributes:
        decided: Starts with a PASS or FAIL verdict.
        passed: Starts that passed.
        errors: Starts that raised.
        pass_rate: passed / decided.
        mean_final: Mean final estimate of entropy and Levy runs.
        reference: Closed-form value the mean is compared with.
        relative_error: |mean_final - reference| / reference.
        verdict: Run verdict.
    """

    model_config = ConfigDict(frozen=True)

    decided: int
    passed: int
    errors: int
    pass_rate: float | None
    mean_final: float | None = None
    reference: float | None = None
    relative_error: float | None = None
    verdict: Verdict


class RunRecord(BaseModel):
    """Result payload of one manifest run.

    ``elapsed_seconds`` is kept out of the payload so reruns are byte-identical.
    """

    model_config = ConfigDict(frozen=True)

    schema_version: str = REPORT_SCHEMA_VERSION
    manifest_hash: str
    command: Command
    maps: list[str]
    precision_bits: int
    results: list[StartResult]
    aggregate: Aggregate
    entropy_check: EntropyDistinctReport | None = None
    elapsed_seconds: float = Field(default=0.0, exclude=True)
