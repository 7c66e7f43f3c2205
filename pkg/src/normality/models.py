"""Frequency tables and normality report models."""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from src.exceptions import ValidationError
from src.maps import OrbitStopReason
from src.types import SymbolString, Verdict


class CountMode(StrEnum):
    """How windows are laid over a digit string."""

    SLIDING = "sliding"
    BLOCK = "block"


@dataclass(frozen=True)
class FrequencyTable:
    """Pattern counts over the windows of a digit string.

    Attributes:
        pattern_length: Length of every counted pattern.
        mode: Sliding windows or non-overlapping blocks.
        windows: Number of windows read.
        counts: Occurrences of each pattern seen at least once.
    """

    pattern_length: int
    mode: CountMode
    windows: int = 0
    counts: Mapping[SymbolString, int] = field(default_factory=dict)

    @classmethod
    def empty(cls, pattern_length: int, mode: CountMode = CountMode.SLIDING) -> FrequencyTable:
        """The identity element of :meth:`merge`."""
        return cls(pattern_length=pattern_length, mode=mode)

    def count(self, pattern: SymbolString) -> int:
        """Occurrences of ``pattern``."""
        return self.counts.get(pattern, 0)

    def frequency(self, pattern: SymbolString) -> float:
        """Occurrences of ``pattern`` per window."""
        if self.windows == 0:
            return 0.0
        return self.count(pattern) / self.windows

    def merge(self, other: FrequencyTable) -> FrequencyTable:
        """Add the counts of a table read over a disjoint digit segment.

        Windows that straddle the join of the two segments are not counted.

        Raises:
            ValidationError: If the tables count different kinds of windows.
        """
        if (self.pattern_length, self.mode) != (other.pattern_length, other.mode):
            raise ValidationError(
                "Cannot merge tables of different pattern length or mode",
                field="pattern_length",
            )
        merged = Counter(self.counts)
        merged.update(other.counts)
        return FrequencyTable(
            pattern_length=self.pattern_length,
            mode=self.mode,
            windows=self.windows + other.windows,
            counts=dict(merged),
        )


class PatternRow(BaseModel):
    """One pattern (or tuple of patterns) with its frequency and target.

    Attributes:
        label: Printable pattern, e.g. ``"01"`` or ``"(0)|(1)"``.
        patterns: One pattern per map; a single entry for one map.
        count: Windows in which every pattern occurred.
        frequency: ``count`` per window.
        target: Invariant (product) measure of the cylinder(s).
        z: (frequency - target) * sqrt(N) / sqrt(target (1 - target)); None
            for a forbidden pattern that occurred.
        forbidden: Whether the target is 0.
        passed: Whether ``|z|`` is within the gate.
    """

    model_config = ConfigDict(frozen=True)

    label: str
    patterns: list[SymbolString]
    count: int = Field(ge=0)
    frequency: float
    target: float
    z: float | None
    forbidden: bool = False
    passed: bool


class GateSettings(BaseModel):
    """Thresholds of a statistical verdict."""

    model_config = ConfigDict(frozen=True)

    gate_sigma: float = Field(gt=0)
    outlier_sigma: float = Field(gt=0)
    outliers_per_hundred: int = Field(ge=0)


class NormalityReport(BaseModel):
    """Sliding pattern frequencies of one point under one map."""

    model_config = ConfigDict(frozen=True)

    map_name: str
    measure: str
    requested: int
    achieved: int
    max_pattern_length: int
    symbol_cap: int | None = None
    stop_reason: OrbitStopReason
    rows: list[PatternRow]
    outliers: int
    max_abs_z: float | None
    verdict: Verdict

    def rows_of_length(self, length: int) -> list[PatternRow]:
        """Rows whose pattern has ``length`` symbols."""
        return [row for row in self.rows if len(row.patterns[0]) == length]


class JointReport(BaseModel):
    """Simultaneous pattern frequencies across several maps of the same point."""

    model_config = ConfigDict(frozen=True)

    map_names: list[str]
    requested: int
    achieved: int
    rows: list[PatternRow]
    outliers: int
    max_abs_z: float | None
    verdict: Verdict

    @property
    def joint_row(self) -> PatternRow:
        """The row counting every pattern at once."""
        return self.rows[0]


class EquivalenceForm(StrEnum):
    """Equivalent characterizations of normality."""

    SLIDING = "i"
    EQUIDISTRIBUTION = "ii"
    POWER_MAP = "iii"
    SHIFTED_BLOCKS = "iv"
    BLOCKS = "v"
    BLOCK_SUBSEQUENCE = "vi"


class CheckResult(BaseModel):
    """One statistical check inside an equivalence form."""

    model_config = ConfigDict(frozen=True)

    label: str
    windows: int
    row_count: int
    outliers: int
    max_abs_z: float | None
    verdict: Verdict


class FormResult(BaseModel):
    """Verdict of one characterization; it passes when every check passes."""

    model_config = ConfigDict(frozen=True)

    form: EquivalenceForm
    checks: list[CheckResult]
    verdict: Verdict


class EquivalenceReport(BaseModel):
    """Verdicts of several characterizations on the same digits.

    ``consistent`` is true when all forms agree, which the equivalence of the
    characterizations predicts.
    """

    model_config = ConfigDict(frozen=True)

    map_names: list[str]
    achieved: int
    forms: list[FormResult]
    consistent: bool

    def verdict_of(self, form: EquivalenceForm) -> Verdict:
        """Verdict of one form."""
        for result in self.forms:
            if result.form == form:
                return result.verdict
        return Verdict.NOT_APPLICABLE
