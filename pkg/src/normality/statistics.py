"""z-scores and gate verdicts for frequency rows."""

import math
from collections.abc import Sequence

from src.config import get_settings
from src.normality.models import GateSettings, PatternRow
from src.types import SymbolString, Verdict


def z_score(frequency: float, target: float, windows: int) -> float | None:
    """(frequency - target) * sqrt(N) / sqrt(target (1 - target)).

    Degenerate targets (0 or 1) give 0 when matched exactly and None otherwise.
    """
    variance = target * (1.0 - target)
    if variance <= 0.0:
        return 0.0 if frequency == target else None
    return (frequency - target) * math.sqrt(windows) / math.sqrt(variance)


def resolve_gates(
    gate_sigma: float | None = None,
    outlier_sigma: float | None = None,
    outliers_per_hundred: int | None = None,
) -> GateSettings:
    """Gate thresholds, falling back to the configured defaults."""
    settings = get_settings()
    return GateSettings(
        gate_sigma=gate_sigma if gate_sigma is not None else settings.gate_sigma,
        outlier_sigma=outlier_sigma if outlier_sigma is not None else settings.outlier_sigma,
        outliers_per_hundred=(
            outliers_per_hundred
            if outliers_per_hundred is not None
            else settings.outliers_per_hundred
        ),
    )


def make_row(
    label: str,
    patterns: list[SymbolString],
    count: int,
    windows: int,
    target: float,
    gates: GateSettings,
) -> PatternRow:
    """Build a row and decide it against the gate."""
    frequency = count / windows if windows else 0.0
    z = z_score(frequency, target, windows)
    return PatternRow(
        label=label,
        patterns=patterns,
        count=count,
        frequency=frequency,
        target=target,
        z=z,
        forbidden=target <= 0.0,
        passed=z is not None and abs(z) <= gates.gate_sigma,
    )


def gate_verdict(
    rows: Sequence[PatternRow], gates: GateSettings
) -> tuple[Verdict, int, float | None]:
    """Verdict over a set of rows.

    Every row must be within ``gate_sigma`` and at most one row per hundred
    (at least one) may exceed ``outlier_sigma``.

    Returns:
        Verdict, number of outliers and the largest |z| (None if no row has a z).
    """
    scores = [abs(row.z) for row in rows if row.z is not None]
    outliers = sum(1 for score in scores if score > gates.outlier_sigma)
    allowed = 0
    if gates.outliers_per_hundred > 0:
        allowed = max(1, math.ceil(len(rows) * gates.outliers_per_hundred / 100))
    passed = all(row.passed for row in rows) and outliers <= allowed
    verdict = Verdict.PASS if passed else Verdict.FAIL
    return verdict, outliers, max(scores, default=None)
