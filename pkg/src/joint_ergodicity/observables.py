"""Evaluating observables on enclosures and integrating them."""

from src.cylinders import cylinder_interval, cylinder_measure
from src.interval import EnclosedReal, compare_to_fraction
from src.joint_ergodicity.models import ObservableKind, ObservableSpec
from src.measures import MeasureSpec, measure_for_map, measure_of_interval


def evaluate_on_enclosure(observable: ObservableSpec, point: EnclosedReal) -> float | None:
    """Value of f on every point of the enclosure, or None when it is not constant there.

    Cylinder observables are read from digits instead and return None here.
    """
    match observable.kind:
        case ObservableKind.INTERVAL:
            assert observable.lower is not None and observable.upper is not None
            inside = (
                compare_to_fraction(point.lower, observable.lower) >= 0
                and compare_to_fraction(point.upper, observable.upper) < 0
            )
            if inside:
                return 1.0
            outside = (
                compare_to_fraction(point.upper, observable.lower) < 0
                or compare_to_fraction(point.lower, observable.upper) >= 0
            )
            return 0.0 if outside else None
        case ObservableKind.PIECEWISE:
            first = _piece_index(observable, point, upper_end=False)
            last = _piece_index(observable, point, upper_end=True)
            pieces = set(observable.values[first : last + 1])
            return observable.values[first] if len(pieces) == 1 else None
        case ObservableKind.CYLINDER:
            return None


def _piece_index(observable: ObservableSpec, point: EnclosedReal, *, upper_end: bool) -> int:
    endpoint = point.upper if upper_end else point.lower
    return sum(
        1 for edge in observable.breakpoints if compare_to_fraction(endpoint, edge) >= 0
    )


def observable_integral(observable: ObservableSpec, measure: MeasureSpec | None = None) -> float:
    """Integral of f against the map's invariant measure."""
    target_measure = measure or measure_for_map(observable.map)
    match observable.kind:
        case ObservableKind.INTERVAL:
            assert observable.lower is not None and observable.upper is not None
            return measure_of_interval(target_measure, observable.lower, observable.upper)
        case ObservableKind.CYLINDER:
            cylinder = cylinder_interval(observable.map, observable.symbols)
            return cylinder_measure(cylinder, target_measure)
        case ObservableKind.PIECEWISE:
            edges = [0, *observable.breakpoints, 1]
            return sum(
                value * measure_of_interval(target_measure, edges[index], edges[index + 1])
                for index, value in enumerate(observable.values)
            )
