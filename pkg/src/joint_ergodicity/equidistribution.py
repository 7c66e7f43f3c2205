"""Box-counting test of joint equidistribution on [0, 1]^k."""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from functools import reduce

import mpmath
import numpy as np

from src.config import get_settings
from src.exceptions import ValidationError
from src.interval import EnclosedReal
from src.joint_ergodicity.models import BoxGrid, EquidistributionReport
from src.maps import MapSpec, iterate_orbit
from src.measures import measure_for_map, measure_of_interval
from src.types import Verdict

logger = logging.getLogger(__name__)

_EXCLUDED = -1
MINIMUM_GATE_FACTOR = 3.0


def orbit_cells(
    spec: MapSpec,
    point: EnclosedReal,
    count: int,
    bins: int,
    resolve_width: float | None = None,
) -> np.ndarray:
    """Grid cell of T^n x for n < count; -1 where the enclosure meets a grid line.

    Steps past the end of the certified orbit are marked -1 as well.
    """
    cells = np.full(count, _EXCLUDED, dtype=np.int64)
    for step in iterate_orbit(spec, point, count, resolve_width):
        lower_cell, upper_cell = step.point.multiply_integer(bins).floor_bounds()
        if lower_cell == upper_cell and 0 <= lower_cell < bins:
            cells[step.index] = lower_cell
    return cells


def cell_targets(spec: MapSpec, bins: int) -> np.ndarray:
    """Invariant measure of each of the ``bins`` equal cells."""
    measure = measure_for_map(spec)
    return np.array(
        [
            measure_of_interval(measure, Fraction(index, bins), Fraction(index + 1, bins))
            for index in range(bins)
        ]
    )


def max_cell_gate_factor(cells: int, confidence: float) -> float:
    """Multiplier z with P(max over ``cells`` normal deviations <= z sigma) = ``confidence``.

    Each cell gets the two-sided coverage confidence^(1/cells) (Sidak). The
    result never drops below the single-cell 3 sigma gate.
    """
    if cells < 1 or not 0 < confidence < 1:
        raise ValidationError(
            "Gate calibration needs cells >= 1 and 0 < confidence < 1",
            field="confidence",
            value=confidence,
        )
    coverage = mpmath.power(mpmath.mpf(confidence), mpmath.mpf(1) / cells)
    quantile = float(mpmath.sqrt(2) * mpmath.erfinv(coverage))
    return max(MINIMUM_GATE_FACTOR, quantile)


def equidist_test(
    point: EnclosedReal,
    maps: Sequence[MapSpec],
    count: int,
    bins: int,
    *,
    independent_points: Sequence[EnclosedReal] | None = None,
    gate_factor: float | None = None,
    confidence: float | None = None,
    max_excluded_fraction: float | None = None,
    resolve_width: float | None = None,
) -> EquidistributionReport:
    """Count (T_1^n x, ..., T_k^n x) in a g^k grid and compare with the product measure.

    Args:
        point: Enclosure of x.
        maps: T_1, ..., T_k.
        count: Number of orbit points N.
        bins: Bins per axis g.
        independent_points: One point per map instead of the shared x.
        gate_factor: Threshold multiplier on sqrt(p (1 - p) / N), p the largest cell
            target; calibrated for the maximum over all g^k cells when omitted.
        confidence: Per-run pass probability the calibrated gate targets.
        max_excluded_fraction: Excluded share above which the run is invalid.
        resolve_width: Digit resolution of the orbits.

    Returns:
        The grid, the largest cell deviation |count/N - prod mu_i(cell_i)| and
        a verdict; INVALID when too many points were excluded.
    """
    settings = get_settings()
    limit = (
        max_excluded_fraction
        if max_excluded_fraction is not None
        else settings.max_excluded_fraction
    )
    if gate_factor is None:
        gate_factor = max_cell_gate_factor(
            bins ** len(maps),
            confidence if confidence is not None else settings.equidist_confidence,
        )
    starts = list(independent_points) if independent_points else [point] * len(maps)
    cells = np.vstack(
        [
            orbit_cells(spec, start, count, bins, resolve_width)
            for spec, start in zip(maps, starts, strict=True)
        ]
    )
    recorded_mask = np.all(cells != _EXCLUDED, axis=0)
    recorded = int(recorded_mask.sum())
    excluded = count - recorded
    shape = (bins,) * len(maps)
    flat = np.ravel_multi_index(tuple(cells[:, recorded_mask]), shape)
    counts = np.bincount(flat, minlength=bins ** len(maps))
    targets = reduce(np.multiply.outer, [cell_targets(spec, bins) for spec in maps]).ravel()
    frequencies = counts / recorded if recorded else np.zeros_like(targets)
    sup_deviation = float(np.max(np.abs(frequencies - targets)))
    largest = float(targets.max())
    threshold = gate_factor * math.sqrt(largest * (1.0 - largest) / max(recorded, 1))
    excluded_fraction = excluded / count if count else 0.0
    valid = excluded_fraction <= limit and recorded > 0
    if not valid:
        logger.warning("Equidistribution run excluded %.2f%% of points", 100 * excluded_fraction)
        verdict = Verdict.INVALID
    else:
        verdict = Verdict.PASS if sup_deviation <= threshold else Verdict.FAIL
    return EquidistributionReport(
        map_names=[spec.name for spec in maps],
        requested=count,
        grid=BoxGrid(
            dimension=len(maps),
            bins=bins,
            counts=counts.tolist(),
            recorded=recorded,
            excluded=excluded,
        ),
        sup_deviation=sup_deviation,
        gate_factor=gate_factor,
        threshold=threshold,
        excluded_fraction=excluded_fraction,
        valid=valid,
        verdict=verdict,
    )
