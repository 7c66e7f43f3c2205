"""Cylinder intervals, emptiness, enumeration and measures.

Affine cylinders are built by pulling [0, 1) back through the inverse
branches of the digits, last digit first. Rational parameters give exact
rational endpoints; irrational slopes use enclosures, and emptiness is then
decided only when the enclosures separate the endpoints.
"""

import logging
import math
from fractions import Fraction

from mpmath.libmp import (
    fone,
    from_int,
    fzero,
    mpf_add,
    mpf_cmp,
    mpf_log,
    mpf_shift,
    mpf_sub,
    round_ceiling,
    round_nearest,
    to_float,
)

from src.config import get_settings
from src.cylinders.convergents import cf_cylinder_endpoints
from src.cylinders.models import Cylinder, CylinderStatus
from src.exceptions import EnumerationLimitError, InvalidSymbolError, UnsupportedMapError
from src.interval import EnclosedReal, required_bits
from src.maps import DigitString, MapFamily, MapSpec
from src.measures import (
    MeasureSpec,
    log_fraction,
    log_measure_of_interval,
    log_measure_of_span,
    measure_of_interval,
)
from src.types import SymbolString

logger = logging.getLogger(__name__)

_ENDPOINT_GUARD_BITS = 64


def cylinder_bits(spec: MapSpec, rank: int) -> int:
    """Precision that separates endpoints of rank-``rank`` cylinders."""
    return required_bits([spec], rank, 2.0**-_ENDPOINT_GUARD_BITS)


def cylinder_interval(spec: MapSpec, symbols: SymbolString, bits: int | None = None) -> Cylinder:
    """Cylinder of a digit string.

    Args:
        spec: A times-b, beta, linear mod one or Gauss map.
        symbols: Digits, each a valid cell symbol of ``spec``.
        bits: Enclosure precision for irrational slopes; sized from the rank
            when omitted.

    Returns:
        The cylinder; inadmissible beta strings come back empty rather than raising.

    Raises:
        InvalidSymbolError: If a symbol is not a cell of the map.
        UnsupportedMapError: For rotations.
    """
    for symbol in symbols:
        if not spec.has_symbol(symbol):
            raise InvalidSymbolError(
                f"Symbol {symbol} is not a cell of {spec.name}", symbol=symbol, map_name=spec.name
            )
    if spec.family == MapFamily.ROTATION:
        raise UnsupportedMapError("Rotations have no generating partition")
    if spec.family == MapFamily.GAUSS:
        return _gauss_cylinder(spec, symbols)
    slope = spec.slope_fraction()
    if slope is not None:
        return _exact_affine_cylinder(spec, symbols, slope)
    return _enclosed_affine_cylinder(spec, symbols, bits or cylinder_bits(spec, len(symbols)))


def cylinder_of_point(spec: MapSpec, digits: DigitString, rank: int | None = None) -> Cylinder:
    """Rank-``rank`` cylinder containing the point whose digits are ``digits``."""
    prefix = digits.symbols if rank is None else digits.symbols[:rank]
    return cylinder_interval(spec, prefix)


def _exact_cylinder(
    spec: MapSpec,
    symbols: SymbolString,
    lower: Fraction,
    upper: Fraction,
    *,
    left_closed: bool = True,
) -> Cylinder:
    if upper <= lower:
        return _empty_cylinder(spec, symbols, CylinderStatus.EMPTY)
    return Cylinder(
        map=spec,
        symbols=symbols,
        status=CylinderStatus.NONEMPTY,
        lower=float(lower),
        upper=float(upper),
        exact_lower=lower,
        exact_upper=upper,
        left_closed=left_closed,
        right_closed=not left_closed,
        log_length=log_fraction(upper - lower),
    )


def _empty_cylinder(spec: MapSpec, symbols: SymbolString, status: CylinderStatus) -> Cylinder:
    return Cylinder(
        map=spec,
        symbols=symbols,
        status=status,
        lower=0.0,
        upper=0.0,
        log_length=-math.inf,
    )


def _gauss_cylinder(spec: MapSpec, symbols: SymbolString) -> Cylinder:
    closed_end, open_end = cf_cylinder_endpoints(symbols)
    if not symbols:
        return _exact_cylinder(spec, symbols, Fraction(0), Fraction(1))
    # odd rank: (open_end, closed_end]; even rank: [closed_end, open_end)
    if len(symbols) % 2 == 1:
        return _exact_cylinder(spec, symbols, open_end, closed_end, left_closed=False)
    return _exact_cylinder(spec, symbols, closed_end, open_end, left_closed=True)


def _exact_affine_cylinder(spec: MapSpec, symbols: SymbolString, slope: Fraction) -> Cylinder:
    shift = spec.shift_fraction()
    lower, upper = Fraction(0), Fraction(1)
    for symbol in reversed(symbols):
        lower = max((lower + symbol - shift) / slope, Fraction(0))
        upper = min((upper + symbol - shift) / slope, Fraction(1))
        if upper <= lower:
            return _empty_cylinder(spec, symbols, CylinderStatus.EMPTY)
    return _exact_cylinder(spec, symbols, lower, upper)


def _enclosed_affine_cylinder(spec: MapSpec, symbols: SymbolString, bits: int) -> Cylinder:
    slope = spec.slope_enclosure(bits)
    shift = spec.shift_fraction()
    lower = EnclosedReal.exact(0, bits)
    upper = EnclosedReal.exact(1, bits)
    status = CylinderStatus.NONEMPTY
    for symbol in reversed(symbols):
        offset = EnclosedReal.exact(symbol - shift, bits)
        ceiling = from_int(symbol + 2)
        lower = lower.add(offset).clamp(fzero, ceiling).divide(slope).clamp(fzero, fone)
        upper = upper.add(offset).clamp(fzero, ceiling).divide(slope).clamp(fzero, fone)
        status = _separation_status(lower, upper, bits)
        if status in {CylinderStatus.EMPTY, CylinderStatus.DEGENERATE}:
            logger.debug("Cylinder %s of %s is %s", symbols, spec.name, status)
            return _empty_cylinder(spec, symbols, status)
    if status == CylinderStatus.AMBIGUOUS:
        logger.info("Cylinder %s of %s is ambiguous at %d bits", symbols, spec.name, bits)
    return Cylinder(
        map=spec,
        symbols=symbols,
        status=status,
        lower=lower.midpoint_float(),
        upper=upper.midpoint_float(),
        left_closed=True,
        right_closed=False,
        log_length=_enclosed_log_length(lower, upper, bits),
        enclosed_lower=lower,
        enclosed_upper=upper,
    )


def _separation_status(lower: EnclosedReal, upper: EnclosedReal, bits: int) -> CylinderStatus:
    if mpf_cmp(upper.upper, lower.lower) <= 0:
        return CylinderStatus.EMPTY
    if mpf_cmp(upper.lower, lower.upper) > 0:
        return CylinderStatus.NONEMPTY
    widest = mpf_sub(upper.upper, lower.lower, bits, round_ceiling)
    if mpf_cmp(widest, mpf_shift(fone, -(bits // 2))) <= 0:
        return CylinderStatus.DEGENERATE
    return CylinderStatus.AMBIGUOUS


def _enclosed_log_length(lower: EnclosedReal, upper: EnclosedReal, bits: int) -> float:
    doubled = mpf_sub(
        mpf_add(upper.lower, upper.upper, bits + 1, round_nearest),
        mpf_add(lower.lower, lower.upper, bits + 1, round_nearest),
        bits,
        round_nearest,
    )
    if mpf_cmp(doubled, fzero) <= 0:
        return -math.inf
    return to_float(mpf_log(mpf_shift(doubled, -1), 53, round_nearest))


def enumerate_cylinders(spec: MapSpec, rank: int, cap: int | None = None) -> list[Cylinder]:
    """All nonempty rank-``rank`` cylinders, in lexicographic order.

    Extensions of empty cylinders are pruned. Ambiguous cylinders are kept
    and logged.

    Raises:
        UnsupportedMapError: For the countable Gauss partition and rotations.
        EnumerationLimitError: If more than ``cap`` cylinders would be produced.
    """
    if spec.symbol_count is None or spec.family == MapFamily.ROTATION:
        raise UnsupportedMapError(f"Cannot enumerate the partition of {spec.name}; sample instead")
    limit = cap or get_settings().enumeration_cap
    bits = cylinder_bits(spec, rank) if spec.slope_fraction() is None else None
    frontier: list[SymbolString] = [()]
    cylinders: list[Cylinder] = []
    for level in range(1, rank + 1):
        cylinders = []
        for prefix in frontier:
            for symbol in spec.symbols():
                candidate = cylinder_interval(spec, (*prefix, symbol), bits)
                if not candidate.empty:
                    cylinders.append(candidate)
            if len(cylinders) > limit:
                raise EnumerationLimitError(
                    f"More than {limit} cylinders of rank {level} for {spec.name}", cap=limit
                )
        frontier = [cylinder.symbols for cylinder in cylinders]
    logger.debug("Enumerated %d rank-%d cylinders of %s", len(cylinders), rank, spec.name)
    return cylinders


def cylinder_count_bound(spec: MapSpec, rank: int) -> float:
    """Upper bound (beta/(beta - 1)) beta^rank on the number of rank-``rank`` cylinders."""
    slope = spec.slope_float()
    return slope / (slope - 1.0) * slope**rank


def cylinder_measure(cylinder: Cylinder, measure: MeasureSpec) -> float:
    """Measure of a cylinder; 0 for empty cylinders."""
    if cylinder.empty:
        return 0.0
    if cylinder.exact_lower is not None and cylinder.exact_upper is not None:
        return measure_of_interval(measure, cylinder.exact_lower, cylinder.exact_upper)
    return measure_of_interval(measure, max(cylinder.lower, 0.0), min(cylinder.upper, 1.0))


def cylinder_log_measure(cylinder: Cylinder, measure: MeasureSpec) -> float:
    """Natural log of the measure of a cylinder, for cylinders of any rank."""
    if cylinder.empty:
        return -math.inf
    if cylinder.exact_lower is not None and cylinder.exact_upper is not None:
        return log_measure_of_interval(measure, cylinder.exact_lower, cylinder.exact_upper)
    midpoint = (cylinder.lower + cylinder.upper) / 2.0
    return log_measure_of_span(measure, midpoint, cylinder.log_length)
