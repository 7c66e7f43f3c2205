"""Precision budgeting for certified orbits."""

import logging
import math
from collections.abc import Iterable
from typing import Protocol

from src.config import get_settings
from src.exceptions import BudgetInfeasibleError

logger = logging.getLogger(__name__)


class ExpandingMap(Protocol):
    """Anything that can report how many bits of precision one step consumes."""

    def expansion_bits_per_step(self) -> float:
        """Average log2 of the derivative along typical orbits."""
        ...


def required_bits(
    maps: Iterable[ExpandingMap],
    steps: int,
    resolve_width: float,
    *,
    margin: float | None = None,
    minimum: int | None = None,
) -> int:
    """Bits needed to certify ``steps`` digits of every map.

    The budget is ceil(margin * (steps * rate + log2(1 / resolve_width))),
    with rate the largest per-step expansion among ``maps``.

    Args:
        maps: Maps that will be iterated on the same point.
        steps: Orbit length.
        resolve_width: Enclosure width at which digits are still decided.
        margin: Safety factor; defaults to the configured precision margin.
        minimum: Floor on the result; defaults to the configured minimum.

    Returns:
        Working precision in bits.
    """
    settings = get_settings()
    factor = settings.precision_margin if margin is None else margin
    floor_bits = settings.minimum_precision_bits if minimum is None else minimum
    rate = max((spec.expansion_bits_per_step() for spec in maps), default=0.0)
    budget = factor * (steps * rate + math.log2(1.0 / resolve_width))
    return max(floor_bits, math.ceil(budget))


def check_budget(
    maps: list[ExpandingMap],
    steps: int,
    resolve_width: float,
    *,
    cap: int | None = None,
) -> int:
    """Compute the budget and refuse runs that exceed the precision cap.

    Raises:
        BudgetInfeasibleError: With the largest orbit length that fits the cap.
    """
    settings = get_settings()
    limit = settings.max_precision_bits if cap is None else cap
    bits = required_bits(maps, steps, resolve_width)
    if bits <= limit:
        return bits
    rate = max((spec.expansion_bits_per_step() for spec in maps), default=0.0)
    usable = limit / settings.precision_margin - math.log2(1.0 / resolve_width)
    suggested = max(0, math.floor(usable / rate)) if rate > 0 else steps
    logger.warning("Precision budget %d exceeds cap %d", bits, limit)
    raise BudgetInfeasibleError(
        f"Run needs {bits} bits, above the cap of {limit}",
        required_bits=bits,
        suggested_steps=suggested,
    )
