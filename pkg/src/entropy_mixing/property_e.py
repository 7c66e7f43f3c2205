"""Good-atom mass: how much of the space sits in cylinders of typical measure."""

import logging
import math
from collections.abc import Sequence

import numpy as np

from src.config import get_settings
from src.cylinders import (
    Cylinder,
    cylinder_interval,
    cylinder_log_measure,
    enumerate_cylinders,
)
from src.entropy_mixing.models import GoodAtomMass, PropertyEMethod, PropertyEReport
from src.exceptions import ValidationError
from src.interval import required_bits, sample_points
from src.maps import MapFamily, MapSpec, closed_form_entropy, orbit_digits
from src.measures import MeasureSpec, gauss_density, measure_for_map

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 1000


def _in_band(log_mass: float, rank: int, entropy: float, epsilon: float) -> bool:
    return -rank * (entropy + epsilon) <= log_mass <= -rank * (entropy - epsilon)


def _envelope(spec: MapSpec, rank: int, epsilon: float) -> float | None:
    """(beta/(beta - 1)) e^{-eps n} for affine maps."""
    if not spec.is_affine:
        return None
    slope = spec.slope_float()
    return slope / (slope - 1.0) * math.exp(-epsilon * rank)


def _lebesgue_length(cylinder: Cylinder) -> float:
    if cylinder.exact_lower is not None and cylinder.exact_upper is not None:
        return float(cylinder.exact_upper - cylinder.exact_lower)
    return math.exp(cylinder.log_length)


def _enumerated_mass(
    spec: MapSpec,
    measure: MeasureSpec,
    rank: int,
    entropy: float,
    epsilon: float,
    cap: int | None,
) -> GoodAtomMass:
    """Good mass is 1 minus the mass of the out-of-band cylinders; together they tile [0, 1)."""
    bad = 0.0
    outside = 0.0
    cylinders = enumerate_cylinders(spec, rank, cap)
    for cylinder in cylinders:
        log_mass = cylinder_log_measure(cylinder, measure)
        if not _in_band(log_mass, rank, entropy, epsilon):
            bad += math.exp(log_mass)
            outside += _lebesgue_length(cylinder)
    return GoodAtomMass(
        n=rank,
        good_mass=min(max(1.0 - bad, 0.0), 1.0),
        out_of_band_mass=outside,
        envelope=_envelope(spec, rank, epsilon),
        cylinders=len(cylinders),
    )


def _sampled_masses(
    spec: MapSpec,
    measure: MeasureSpec,
    ranks: Sequence[int],
    entropy: float,
    epsilon: float,
    seeds: Sequence[int],
    resolve_width: float | None,
) -> tuple[list[GoodAtomMass], int]:
    """Self-normalized importance sampling of the good mass from Lebesgue samples.

    Each sample x is weighted by the invariant density at x. Samples whose
    digits could not be certified up to the largest rank are excluded.
    """
    width = get_settings().resolve_width if resolve_width is None else resolve_width
    deepest = max(ranks)
    bits = required_bits([spec], deepest, width)
    prefixes = []
    weights = []
    for point in sample_points(list(seeds), bits):
        digits = orbit_digits(spec, point, deepest, width)
        if not digits.complete:
            continue
        prefixes.append(digits.symbols)
        weights.append(_density_weight(spec, measure, point.midpoint_float()))
    excluded = len(seeds) - len(prefixes)
    if excluded:
        logger.warning("Excluded %d of %d samples with uncertified digits", excluded, len(seeds))
    if not prefixes:
        raise ValidationError("No sample was certified to the largest rank", field="samples")
    weight_array = np.asarray(weights)
    masses = []
    for rank in ranks:
        good = np.array(
            [
                _in_band(
                    cylinder_log_measure(cylinder_interval(spec, symbols[:rank]), measure),
                    rank,
                    entropy,
                    epsilon,
                )
                for symbols in prefixes
            ]
        )
        masses.append(
            GoodAtomMass(
                n=rank,
                good_mass=float(np.sum(weight_array[good]) / np.sum(weight_array)),
                out_of_band_mass=float(np.mean(~good)),
                envelope=_envelope(spec, rank, epsilon),
                cylinders=len(prefixes),
            )
        )
    return masses, excluded


def _density_weight(spec: MapSpec, measure: MeasureSpec, point: float) -> float:
    if spec.family == MapFamily.GAUSS:
        return gauss_density(point)
    if measure.density is not None:
        return measure.density.value_at(point)
    return 1.0


def fit_c0(masses: Sequence[GoodAtomMass]) -> float:
    """Smallest c0 with good_mass >= 1 - c0 / n on every rank."""
    return max((mass.n * (1.0 - mass.good_mass) for mass in masses), default=0.0)


def property_e_mass(
    spec: MapSpec,
    epsilon: float,
    ranks: Sequence[int],
    *,
    measure: MeasureSpec | None = None,
    method: PropertyEMethod | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    cap: int | None = None,
    resolve_width: float | None = None,
) -> PropertyEReport:
    """Mass of rank-n cylinders whose measure lies in [e^{-n(h+eps)}, e^{-n(h-eps)}].

    Args:
        spec: The map.
        epsilon: Band half-width eps > 0.
        ranks: Ranks n to test.
        measure: Measure of the cylinders; the invariant measure by default.
        method: Exact enumeration (finite partitions, the default there) or
            sampling (the default for the Gauss map).
        samples: Sample count M when sampling.
        seed: First seed; samples use seeds ``seed``..``seed + M - 1``.
        cap: Enumeration cap on cylinders per rank.
        resolve_width: Digit resolution of sampled orbits.

    Raises:
        ValidationError: For a nonpositive epsilon or an empty rank list.
        EnumerationLimitError: If a rank has more than ``cap`` cylinders.
    """
    if epsilon <= 0 or not ranks or min(ranks) < 1:
        raise ValidationError(
            "Property E needs epsilon > 0 and ranks >= 1", field="epsilon", value=epsilon
        )
    entropy = closed_form_entropy(spec).value
    target_measure = measure or measure_for_map(spec)
    chosen = method or (
        PropertyEMethod.SAMPLING if spec.symbol_count is None else PropertyEMethod.ENUMERATION
    )
    excluded = 0
    if chosen == PropertyEMethod.ENUMERATION:
        masses = [
            _enumerated_mass(spec, target_measure, rank, entropy, epsilon, cap)
            for rank in ranks
        ]
    else:
        masses, excluded = _sampled_masses(
            spec,
            target_measure,
            ranks,
            entropy,
            epsilon,
            range(seed, seed + samples),
            resolve_width,
        )
    for mass in masses:
        if mass.within_envelope is False:
            logger.warning(
                "Out-of-band mass %.3e of %s at n=%d exceeds the envelope %.3e",
                mass.out_of_band_mass,
                spec.name,
                mass.n,
                mass.envelope,
            )
    return PropertyEReport(
        map_name=spec.name,
        epsilon=epsilon,
        entropy=entropy,
        method=chosen,
        samples=samples if chosen == PropertyEMethod.SAMPLING else None,
        excluded_samples=excluded,
        masses=masses,
        c0=fit_c0(masses),
    )
