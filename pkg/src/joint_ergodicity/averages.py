"""Running product averages along joint orbits."""

import logging
import math
from collections.abc import Sequence

import numpy as np

from src.config import get_settings
from src.constants import CHECKPOINT_COUNT
from src.interval import EnclosedReal
from src.joint_ergodicity.models import (
    Checkpoint,
    JointAverageReport,
    ObservableKind,
    ObservableSpec,
)
from src.joint_ergodicity.observables import evaluate_on_enclosure, observable_integral
from src.maps import MapSpec, iterate_orbit
from src.normality.counting import match_mask
from src.types import Verdict

logger = logging.getLogger(__name__)


def _orbit_values(
    spec: MapSpec,
    point: EnclosedReal,
    observables: list[ObservableSpec],
    count: int,
    resolve_width: float | None,
) -> list[np.ndarray]:
    """Values of each observable along one orbit, cut at the first undecided term."""
    longest = max((len(item.symbols) for item in observables), default=0)
    orbit = iterate_orbit(spec, point, count + max(longest, 1) - 1, resolve_width)
    pointwise = [item for item in observables if item.kind != ObservableKind.CYLINDER]
    pointwise_values: dict[int, list[float]] = {id(item): [] for item in pointwise}
    symbols: list[int] = []
    decided = count
    for step in orbit:
        symbols.append(step.symbol)
        if step.index >= decided:
            continue
        for item in pointwise:
            value = evaluate_on_enclosure(item, step.point)
            if value is None:
                logger.info("Observable %s undecided at step %d", item.label, step.index)
                decided = step.index
                break
            pointwise_values[id(item)].append(value)
    decided = min(decided, orbit.certified_steps)
    results = []
    for item in observables:
        if item.kind == ObservableKind.CYLINDER:
            windows = max(min(decided, len(symbols) - len(item.symbols) + 1), 0)
            results.append(match_mask(symbols, item.symbols, windows).astype(float))
        else:
            results.append(np.asarray(pointwise_values[id(item)][:decided], dtype=float))
    return results


def joint_average(
    point: EnclosedReal,
    observables: Sequence[ObservableSpec],
    count: int,
    *,
    independent_points: Sequence[EnclosedReal] | None = None,
    gate_sigma: float | None = None,
    resolve_width: float | None = None,
) -> JointAverageReport:
    """(1/N) sum_n f_1(T_1^n x) ... f_k(T_k^n x) with ten running checkpoints.

    Args:
        point: Enclosure of x, shared by every map.
        observables: The f_i, each attached to its map.
        count: Number of terms N.
        independent_points: One point per observable instead of the shared x.
        gate_sigma: |z| gate of the verdict.
        resolve_width: Digit resolution of the orbits.

    Returns:
        Checkpointed averages, the target prod integral f_i dmu_i and a z-score.
        When an orbit stops early or an observable is undecided, only the
        certified prefix is averaged.
    """
    gate = gate_sigma if gate_sigma is not None else get_settings().gate_sigma
    starts = list(independent_points) if independent_points else [point] * len(observables)
    groups: dict[tuple[MapSpec, int], list[int]] = {}
    for index, item in enumerate(observables):
        key = (item.map, id(starts[index]))
        groups.setdefault(key, []).append(index)
    series: dict[int, np.ndarray] = {}
    for (spec, _), members in groups.items():
        members_observables = [observables[index] for index in members]
        values = _orbit_values(
            spec, starts[members[0]], members_observables, count, resolve_width
        )
        series.update(zip(members, values, strict=True))
    achieved = min(len(values) for values in series.values())
    if achieved < count:
        logger.warning("Joint average certified %d of %d terms", achieved, count)
    products = np.ones(achieved)
    for index in range(len(observables)):
        products *= series[index][:achieved]
    target = math.prod(observable_integral(item) for item in observables)
    indicators = all(item.is_indicator for item in observables)
    checkpoints = _checkpoints(products, target, indicators)
    final = checkpoints[-1].average if checkpoints else 0.0
    final_z = checkpoints[-1].z if checkpoints else None
    return JointAverageReport(
        map_names=[item.map.name for item in observables],
        observables=[item.label for item in observables],
        requested=count,
        achieved=achieved,
        independent_points=independent_points is not None,
        checkpoints=checkpoints,
        final=final,
        target=target,
        z=final_z,
        verdict=_verdict(achieved, final, target, final_z, gate),
    )


def _checkpoints(products: np.ndarray, target: float, indicators: bool) -> list[Checkpoint]:
    total = products.size
    if total == 0:
        return []
    running = np.cumsum(products)
    steps = range(1, CHECKPOINT_COUNT + 1)
    marks = sorted({max(1, total * step // CHECKPOINT_COUNT) for step in steps})
    checkpoints = []
    for mark in marks:
        average = float(running[mark - 1] / mark)
        if indicators:
            spread = math.sqrt(max(target * (1.0 - target), 0.0))
        else:
            spread = float(np.std(products[:mark]))
        z = (average - target) * math.sqrt(mark) / spread if spread > 0 else None
        checkpoints.append(Checkpoint(index=mark, average=average, z=z))
    return checkpoints


def _verdict(achieved: int, final: float, target: float, z: float | None, gate: float) -> Verdict:
    if achieved == 0:
        return Verdict.INVALID
    if z is None:
        return Verdict.PASS if final == target else Verdict.FAIL
    return Verdict.PASS if abs(z) <= gate else Verdict.FAIL
