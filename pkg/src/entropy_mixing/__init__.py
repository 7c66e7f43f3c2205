"""Entropy, Levy constant, property E and property M estimators."""

from src.entropy_mixing.entropy import (
    decade_checkpoints,
    fibonacci_bound_holds,
    levy_estimate,
    smb_estimate,
)
from src.entropy_mixing.fitting import fit_exponential
from src.entropy_mixing.gauss_operator import GaussCollocation, gauss_collocation
from src.entropy_mixing.mixing import default_route, mixing_correlation, piecewise_fixed_point
from src.entropy_mixing.models import (
    EntropyReport,
    ExponentialFit,
    FitStatus,
    GoodAtomMass,
    LevyReport,
    MixingReport,
    MixingRoute,
    PropertyEMethod,
    PropertyEReport,
    SeriesPoint,
)
from src.entropy_mixing.piecewise import AffineTransfer, PiecewiseConstant, working_context
from src.entropy_mixing.property_e import fit_c0, property_e_mass

__all__ = [
    "AffineTransfer",
    "EntropyReport",
    "ExponentialFit",
    "FitStatus",
    "GaussCollocation",
    "GoodAtomMass",
    "LevyReport",
    "MixingReport",
    "MixingRoute",
    "PiecewiseConstant",
    "PropertyEMethod",
    "PropertyEReport",
    "SeriesPoint",
    "decade_checkpoints",
    "default_route",
    "fibonacci_bound_holds",
    "fit_c0",
    "fit_exponential",
    "gauss_collocation",
    "levy_estimate",
    "mixing_correlation",
    "piecewise_fixed_point",
    "property_e_mass",
    "smb_estimate",
    "working_context",
]
