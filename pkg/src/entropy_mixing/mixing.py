"""Correlation decay |lambda(A ∩ T^-(n+l) B) - lambda(A) mu(B)| for a cylinder A and interval B.

lambda(A ∩ T^-m B) equals the integral over B of L^m 1_A, with L the transfer
operator of T with respect to Lebesgue measure. Each route computes that
integral differently:

* exact: piecewise-constant transfer in rational arithmetic, for affine maps
  with rational parameters and Lebesgue invariant measure;
* high precision: the same in an mpmath context, for the other affine maps,
  with mu(B) from the piecewise fixed point of L;
* grid: the uniform-grid operator of :mod:`src.measures.transfer`;
* Gauss spectral: L^l 1_A = 1/(q_l + q_{l-1} y)^2 is smooth, and L^n of it is
  computed by Chebyshev collocation with an accumulated error bound;
* Gauss preimage: the preimages of B in A are enumerated in rational arithmetic
  up to a partial quotient cap, and the mass of the skipped cylinders bounds
  the error. The branch count grows as J^n, so this route serves short lags.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction
from itertools import accumulate

import numpy as np

from src.config import get_settings
from src.cylinders import cf_cylinder_length, convergents, cylinder_interval
from src.entropy_mixing.fitting import fit_exponential
from src.entropy_mixing.gauss_operator import gauss_collocation
from src.entropy_mixing.models import MixingReport, MixingRoute, SeriesPoint
from src.entropy_mixing.piecewise import (
    AffineTransfer,
    PiecewiseConstant,
    Scalar,
    noise_floor,
    working_context,
)
from src.exceptions import (
    ConvergenceError,
    EnumerationLimitError,
    TailBoundError,
    UnsupportedMapError,
    ValidationError,
)
from src.maps import MapFamily, MapSpec
from src.measures import (
    DensityTable,
    gauss_measure,
    measure_for_map,
    measure_of_interval,
    transfer_apply,
)
from src.types import SymbolString

logger = logging.getLogger(__name__)

_MACHINE_NOISE = 64 * float(np.finfo(float).eps)
_GAUSS_ROUTES = frozenset({MixingRoute.GAUSS_SPECTRAL, MixingRoute.GAUSS_PREIMAGE})


def default_route(spec: MapSpec) -> MixingRoute:
    """Route used when none is requested."""
    if spec.family == MapFamily.GAUSS:
        return MixingRoute.GAUSS_SPECTRAL
    if not spec.is_affine:
        raise UnsupportedMapError(f"No correlation route for {spec.name}")
    slope = spec.slope_fraction()
    if slope is not None and slope.denominator == 1:
        return MixingRoute.EXACT
    return MixingRoute.HIGH_PRECISION


def _check_target(lower: Fraction, upper: Fraction) -> None:
    if not 0 <= lower < upper <= 1:
        raise ValidationError(
            "Target interval must satisfy 0 <= lower < upper <= 1",
            field="target",
            value=[str(lower), str(upper)],
        )


def _piecewise_series(
    transfer: AffineTransfer,
    cylinder: SymbolString,
    lower: Fraction,
    upper: Fraction,
    target_measure: Scalar,
    n_values: Sequence[int],
) -> tuple[list[Scalar], Scalar]:
    """Raw correlations lambda(A ∩ T^-(n+l) B) - lambda(A) mu(B) and lambda(A)."""
    start, end = transfer.cylinder_bounds(cylinder)
    cylinder_length = end - start
    target_lower = _as_scalar(transfer, lower)
    target_upper = _as_scalar(transfer, upper)
    function = transfer.indicator(start, end)
    for _ in cylinder:
        function = transfer.apply(function)
    wanted = set(n_values)
    correlations = []
    for n in range(max(n_values) + 1):
        if n in wanted:
            overlap = function.integral(target_lower, target_upper)
            correlations.append(overlap - cylinder_length * target_measure)
        function = transfer.apply(function)
    return correlations, cylinder_length


def _as_scalar(transfer: AffineTransfer, value: Fraction) -> Scalar:
    return transfer.zero + value.numerator / (transfer.one * value.denominator)


def piecewise_fixed_point(
    transfer: AffineTransfer, max_iterations: int | None = None
) -> PiecewiseConstant:
    """Invariant density of L by power iteration from the constant 1.

    Stops when successive iterates differ by less than the merge tolerance.

    Raises:
        ConvergenceError: If ``max_iterations`` is reached first.
    """
    limit = max_iterations or get_settings().density_max_iterations
    current = transfer.constant(transfer.one)
    for iteration in range(1, limit + 1):
        updated = transfer.apply(current)
        change = updated.distance(current)
        current = updated
        if change <= transfer.tolerance:
            logger.debug(
                "Piecewise density converged in %d steps with %d pieces",
                iteration,
                current.piece_count,
            )
            return current
    raise ConvergenceError(
        "Piecewise invariant density did not converge", residual=float(change)
    )


def _exact_route(
    spec: MapSpec,
    cylinder: SymbolString,
    lower: Fraction,
    upper: Fraction,
    n_values: Sequence[int],
) -> tuple[list[float], float, float, float]:
    slope = spec.slope_fraction()
    if slope is None or slope.denominator != 1:
        raise UnsupportedMapError(
            f"The exact route needs an integer slope, which {spec.name} does not have"
        )
    transfer = AffineTransfer.for_map(spec)
    target_measure = upper - lower
    correlations, cylinder_length = _piecewise_series(
        transfer, cylinder, lower, upper, target_measure, n_values
    )
    return (
        [abs(float(value)) for value in correlations],
        float(cylinder_length),
        float(target_measure),
        0.0,
    )


def _high_precision_route(
    spec: MapSpec,
    cylinder: SymbolString,
    lower: Fraction,
    upper: Fraction,
    n_values: Sequence[int],
    bits: int,
) -> tuple[list[float], float, float, float]:
    context = working_context(bits)
    transfer = AffineTransfer.for_map(spec, context)
    density = piecewise_fixed_point(transfer)
    target_measure = density.integral(
        _as_scalar(transfer, lower), _as_scalar(transfer, upper)
    ) / density.integral(transfer.zero, transfer.one)
    correlations, cylinder_length = _piecewise_series(
        transfer, cylinder, lower, upper, target_measure, n_values
    )
    return (
        [float(context.fabs(value)) for value in correlations],
        float(cylinder_length),
        float(target_measure),
        noise_floor(context),
    )


def _grid_route(
    spec: MapSpec,
    cylinder: SymbolString,
    lower: Fraction,
    upper: Fraction,
    n_values: Sequence[int],
    grid_size: int,
) -> tuple[list[float], float, float, float]:
    interval = cylinder_interval(spec, cylinder)
    if interval.empty:
        raise ValidationError("Cylinder is empty", field="cylinder", value=list(cylinder))
    edges = np.arange(grid_size + 1) / grid_size
    overlap = np.clip(
        np.minimum(edges[1:], interval.upper) - np.maximum(edges[:-1], interval.lower), 0.0, None
    )
    function = DensityTable(
        map_name=spec.name,
        grid_size=grid_size,
        values=tuple((overlap * grid_size).tolist()),
    )
    measure = measure_for_map(spec, grid_size)
    target_measure = measure_of_interval(measure, lower, upper)
    cylinder_length = float(np.sum(overlap))
    for _ in cylinder:
        function = transfer_apply(spec, function)
    wanted = set(n_values)
    series = []
    for n in range(max(n_values) + 1):
        if n in wanted:
            value = function.integral(float(lower), float(upper))
            series.append(abs(value - cylinder_length * target_measure))
        function = transfer_apply(spec, function)
    return series, cylinder_length, target_measure, 1.0 / grid_size


def _gauss_route(
    cylinder: SymbolString,
    lower: Fraction,
    upper: Fraction,
    n_values: Sequence[int],
    node_count: int,
    branch_cap: int,
    tolerance: float,
) -> tuple[list[float], float, float, float, float, float]:
    operator = gauss_collocation(node_count, branch_cap)
    last = convergents(cylinder)[-1]
    values = 1.0 / (last.q + last.previous_q * operator.nodes) ** 2
    cylinder_length = float(cf_cylinder_length(cylinder))
    target_measure = gauss_measure(lower, upper)
    wanted = set(n_values)
    series = []
    tail_bound = 0.0
    residual = operator.interpolation_error(values)
    for n in range(max(n_values) + 1):
        if n in wanted:
            overlap = operator.integral(values, float(lower), float(upper))
            series.append(abs(overlap - cylinder_length * target_measure))
        if n == max(n_values):
            break
        tail_bound = max(tail_bound, operator.uncorrected_tail(values))
        image = operator.apply(values)
        residual += operator.step_error(values, image)
        values = image
    if residual > tolerance:
        raise TailBoundError(
            f"Gauss collocation error {residual:.3e} exceeds {tolerance:.3e}",
            bound=residual,
            tolerance=tolerance,
        )
    floor = max(residual, _MACHINE_NOISE * cylinder_length * target_measure)
    return series, cylinder_length, target_measure, floor, tail_bound, residual


def _preimage_sums(
    denominator: int,
    previous_denominator: int,
    depth: int,
    lower: Fraction,
    upper: Fraction,
    branch_cap: int,
) -> tuple[Fraction, Fraction]:
    """lambda of the points of a cylinder whose image under T^depth lies in [lower, upper).

    Every extension of the cylinder by ``depth`` partial quotients at most
    ``branch_cap`` is visited. On the extension with denominators q, q' the map
    T^depth is t -> (p + t p')/(q + t q') inverted, so the preimage of
    [lower, upper) has length (upper - lower)/((q + upper q')(q + lower q')).

    Returns:
        The truncated overlap and the total length of the visited extensions.
    """
    span = upper - lower
    overlap = Fraction(0)
    covered = Fraction(0)
    stack = [(denominator, previous_denominator, depth)]
    while stack:
        current, previous, remaining = stack.pop()
        if remaining == 0:
            overlap += span / ((current + upper * previous) * (current + lower * previous))
            covered += Fraction(1, current * (current + previous))
            continue
        stack.extend(
            (digit * current + previous, current, remaining - 1)
            for digit in range(1, branch_cap + 1)
        )
    return overlap, covered


def _gauss_preimage_route(
    cylinder: SymbolString,
    lower: Fraction,
    upper: Fraction,
    n_values: Sequence[int],
    branch_cap: int,
    tolerance: float,
    enumeration_cap: int,
) -> tuple[list[float], float, float, float, float, float]:
    deepest = max(n_values)
    if branch_cap**deepest > enumeration_cap:
        raise EnumerationLimitError(
            f"{branch_cap}^{deepest} preimage branches exceed the enumeration cap",
            cap=enumeration_cap,
        )
    last = convergents(cylinder)[-1]
    cylinder_length = cf_cylinder_length(cylinder)
    target_measure = gauss_measure(lower, upper)
    series = []
    tail_bound = Fraction(0)
    for n in n_values:
        overlap, covered = _preimage_sums(
            last.q, last.previous_q, n, lower, upper, branch_cap
        )
        omitted = cylinder_length - covered
        tail_bound = max(tail_bound, omitted)
        series.append(abs(float(overlap + omitted / 2) - float(cylinder_length) * target_measure))
    residual = float(tail_bound) / 2
    if residual > tolerance:
        raise TailBoundError(
            f"Omitted preimage mass {float(tail_bound):.3e} exceeds twice {tolerance:.3e}",
            bound=residual,
            tolerance=tolerance,
        )
    floor = max(residual, _MACHINE_NOISE * float(cylinder_length) * target_measure)
    return series, float(cylinder_length), target_measure, floor, float(tail_bound), residual


def mixing_correlation(
    spec: MapSpec,
    cylinder: SymbolString,
    lower: Fraction,
    upper: Fraction,
    n_values: Sequence[int],
    *,
    route: MixingRoute | None = None,
    grid_size: int | None = None,
    precision_bits: int | None = None,
    branch_cap: int | None = None,
    node_count: int | None = None,
    tail_tolerance: float | None = None,
) -> MixingReport:
    """Correlation series of the cylinder A = C(``cylinder``) against B = [lower, upper).

    Args:
        spec: Times-b, beta, linear mod one or Gauss map.
        cylinder: Digits of A; l is their count.
        lower: Left end of B.
        upper: Right end of B.
        n_values: Lags n >= 0.
        route: Computation route; see :func:`default_route`.
        grid_size: Bins of the grid route.
        precision_bits: Working precision of the high-precision route.
        branch_cap: Explicit Gauss branches J, or the partial quotient cap of the
            preimage route.
        node_count: Chebyshev nodes of the Gauss route.
        tail_tolerance: Largest accepted Gauss error bound.

    Returns:
        The series, its partial sums and an exponential fit.

    Raises:
        ValidationError: For an empty cylinder, bad target interval or lag list.
        UnsupportedMapError: For rotations or a route the map does not support.
        TailBoundError: If a Gauss error bound exceeds the tolerance.
        EnumerationLimitError: If the preimage route would visit too many branches.
    """
    _check_target(lower, upper)
    if not cylinder or not n_values or min(n_values) < 0:
        raise ValidationError(
            "Need a nonempty cylinder and lags n >= 0", field="n_values", value=list(n_values)
        )
    settings = get_settings()
    chosen = route or default_route(spec)
    lags = sorted(set(n_values))
    tail_bound = None
    residual = None
    tolerance = settings.mixing_tail_tolerance if tail_tolerance is None else tail_tolerance
    if chosen in _GAUSS_ROUTES and spec.family != MapFamily.GAUSS:
        raise UnsupportedMapError(f"The {chosen} route is for the Gauss map, not {spec.name}")
    if chosen == MixingRoute.GAUSS_SPECTRAL:
        series, cylinder_length, target_measure, floor, tail_bound, residual = _gauss_route(
            cylinder,
            lower,
            upper,
            lags,
            node_count or settings.gauss_collocation_nodes,
            branch_cap or settings.gauss_mixing_branch_cap,
            tolerance,
        )
    elif chosen == MixingRoute.GAUSS_PREIMAGE:
        series, cylinder_length, target_measure, floor, tail_bound, residual = (
            _gauss_preimage_route(
                cylinder,
                lower,
                upper,
                lags,
                branch_cap or settings.gauss_branch_cap,
                tolerance,
                settings.enumeration_cap,
            )
        )
    elif chosen == MixingRoute.EXACT:
        series, cylinder_length, target_measure, floor = _exact_route(
            spec, cylinder, lower, upper, lags
        )
    elif chosen == MixingRoute.HIGH_PRECISION:
        series, cylinder_length, target_measure, floor = _high_precision_route(
            spec, cylinder, lower, upper, lags, precision_bits or settings.mixing_precision_bits
        )
    else:
        series, cylinder_length, target_measure, floor = _grid_route(
            spec, cylinder, lower, upper, lags, grid_size or settings.density_grid_size
        )
    points = [SeriesPoint(n=n, value=value) for n, value in zip(lags, series, strict=True)]
    fit = fit_exponential(points, floor)
    logger.info(
        "Mixing series of %s via %s: fit %s, rate %s", spec.name, chosen, fit.status, fit.rate
    )
    return MixingReport(
        map_name=spec.name,
        route=chosen,
        cylinder=cylinder,
        target_lower=lower,
        target_upper=upper,
        cylinder_length=cylinder_length,
        target_measure=target_measure,
        series=points,
        partial_sums=list(accumulate(series)),
        fit=fit,
        tail_bound=tail_bound,
        residual=residual,
    )

