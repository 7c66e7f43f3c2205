"""Invariant measures: closed-form Lebesgue and Gauss, numeric densities for affine maps."""

from src.measures.closed_form import (
    gauss_density,
    gauss_log_measure,
    gauss_log_measure_of_span,
    gauss_measure,
    lebesgue_measure,
    log_fraction,
)
from src.measures.evaluation import (
    GAUSS,
    LEBESGUE,
    invariance_defect,
    log_measure_of_interval,
    log_measure_of_span,
    measure_for_map,
    measure_of_interval,
    preimage_intervals,
)
from src.measures.export import density_json, density_rows
from src.measures.models import (
    DensityTable,
    GaussFixedPointCheck,
    InverseBranch,
    MeasureKind,
    MeasureSpec,
)
from src.measures.transfer import (
    constant_density,
    gauss_inverse_branches,
    gauss_transfer_fixed_point_defect,
    inverse_branches,
    invariant_density,
    renyi_bounds,
    transfer_apply,
    transfer_matrix,
)

__all__ = [
    "GAUSS",
    "LEBESGUE",
    "DensityTable",
    "GaussFixedPointCheck",
    "InverseBranch",
    "MeasureKind",
    "MeasureSpec",
    "constant_density",
    "density_json",
    "density_rows",
    "gauss_density",
    "gauss_inverse_branches",
    "gauss_log_measure",
    "gauss_log_measure_of_span",
    "gauss_measure",
    "gauss_transfer_fixed_point_defect",
    "inverse_branches",
    "invariance_defect",
    "invariant_density",
    "lebesgue_measure",
    "log_fraction",
    "log_measure_of_interval",
    "log_measure_of_span",
    "measure_for_map",
    "measure_of_interval",
    "preimage_intervals",
    "renyi_bounds",
    "transfer_apply",
    "transfer_matrix",
]
