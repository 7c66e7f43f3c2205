"""Exponential-rate fits of correlation series."""

import logging
from collections.abc import Sequence

import numpy as np

from src.constants import MINIMUM_FIT_POINTS, NOISE_FLOOR_FACTOR
from src.entropy_mixing.models import ExponentialFit, FitStatus, SeriesPoint

logger = logging.getLogger(__name__)


def _usable_range(values: np.ndarray, threshold: float) -> tuple[int, int]:
    """Longest run of consecutive values above ``threshold`` as [start, stop)."""
    best = (0, 0)
    start = None
    for index, above in enumerate(np.append(values > threshold, False)):
        if above and start is None:
            start = index
        elif not above and start is not None:
            if index - start > best[1] - best[0]:
                best = (start, index)
            start = None
    return best


def fit_exponential(series: Sequence[SeriesPoint], noise_floor: float) -> ExponentialFit:
    """Least squares of log c_n against n over the decay range.

    Values at or below ``NOISE_FLOOR_FACTOR`` times the noise floor are masked
    and the longest run of remaining consecutive points is fitted. Fewer than
    ``MINIMUM_FIT_POINTS`` usable points give no rate.
    """
    values = np.array([point.value for point in series], dtype=float)
    indices = np.array([point.n for point in series], dtype=float)
    if values.size and np.all(values == 0.0):
        return ExponentialFit(
            status=FitStatus.EXACT_ZERO, noise_floor=noise_floor, summable=True
        )
    start, stop = _usable_range(values, NOISE_FLOOR_FACTOR * noise_floor)
    if stop - start < MINIMUM_FIT_POINTS:
        logger.info("Only %d points above the noise floor; no rate fitted", stop - start)
        return ExponentialFit(
            status=FitStatus.INSUFFICIENT_RANGE,
            points_used=stop - start,
            noise_floor=noise_floor,
            summable=False,
        )
    used_n = indices[start:stop]
    logs = np.log(values[start:stop])
    slope, intercept = np.polyfit(used_n, logs, 1)
    predicted = intercept + slope * used_n
    spread = float(np.sum((logs - logs.mean()) ** 2))
    r_squared = 1.0 - float(np.sum((logs - predicted) ** 2)) / spread if spread > 0 else 1.0
    rate = float(np.exp(slope))
    status = FitStatus.EXPONENTIAL if rate < 1.0 else FitStatus.NON_EXPONENTIAL
    return ExponentialFit(
        status=status,
        rate=rate,
        prefactor=float(np.exp(intercept)),
        r_squared=r_squared,
        first_n=int(used_n[0]),
        last_n=int(used_n[-1]),
        points_used=stop - start,
        noise_floor=noise_floor,
        summable=rate < 1.0,
    )
