"""Closed-form dynamical invariants of the map families."""

import math

from pydantic import BaseModel, ConfigDict

from src.constants import (
    BETA_ENTROPY_FORMULA,
    GAUSS_ENTROPY,
    GAUSS_ENTROPY_FORMULA,
    ROTATION_ENTROPY_FORMULA,
    TIMES_B_ENTROPY_FORMULA,
)
from src.maps.models import MapFamily, MapSpec

_LOG_TWO = math.log(2.0)


class ClosedFormEntropy(BaseModel):
    """Entropy of a map with respect to its absolutely continuous invariant measure."""

    model_config = ConfigDict(frozen=True)

    map_name: str
    value: float
    formula: str


def closed_form_entropy(spec: MapSpec) -> ClosedFormEntropy:
    """Kolmogorov-Sinai entropy in nats.

    log b for T_b, log beta for beta and linear mod one maps, pi^2/(6 log 2)
    for the Gauss map and 0 for rotations.
    """
    match spec.family:
        case MapFamily.TIMES_B:
            value, formula = math.log(spec.slope_float()), TIMES_B_ENTROPY_FORMULA
        case MapFamily.BETA | MapFamily.LINEAR_MOD_ONE:
            value, formula = math.log(spec.slope_float()), BETA_ENTROPY_FORMULA
        case MapFamily.GAUSS:
            value, formula = GAUSS_ENTROPY, GAUSS_ENTROPY_FORMULA
        case MapFamily.ROTATION:
            value, formula = 0.0, ROTATION_ENTROPY_FORMULA
    return ClosedFormEntropy(map_name=spec.name, value=value, formula=formula)


def expansion_exponent(spec: MapSpec) -> float:
    """Average enclosure growth per step, in bits.

    Affine maps stretch by their slope; the Gauss derivative 1/x^2 grows like
    the square of the convergent denominators, twice the Levy rate.
    """
    match spec.family:
        case MapFamily.GAUSS:
            return GAUSS_ENTROPY / _LOG_TWO
        case MapFamily.ROTATION:
            return 0.0
        case _:
            return math.log2(spec.slope_float())
