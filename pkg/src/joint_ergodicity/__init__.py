"""Pointwise joint ergodicity: product averages, grid equidistribution, entropy distinctness."""

from src.joint_ergodicity.averages import joint_average
from src.joint_ergodicity.entropy_check import entropy_distinct_check
from src.joint_ergodicity.equidistribution import (
    cell_targets,
    equidist_test,
    max_cell_gate_factor,
    orbit_cells,
)
from src.joint_ergodicity.models import (
    BoxGrid,
    Checkpoint,
    EntropyDistinctReport,
    EntropyEntry,
    EntropyPair,
    EquidistributionReport,
    JointAverageReport,
    ObservableKind,
    ObservableSpec,
)
from src.joint_ergodicity.observables import evaluate_on_enclosure, observable_integral

__all__ = [
    "BoxGrid",
    "Checkpoint",
    "EntropyDistinctReport",
    "EntropyEntry",
    "EntropyPair",
    "EquidistributionReport",
    "JointAverageReport",
    "ObservableKind",
    "ObservableSpec",
    "cell_targets",
    "entropy_distinct_check",
    "equidist_test",
    "evaluate_on_enclosure",
    "joint_average",
    "max_cell_gate_factor",
    "observable_integral",
    "orbit_cells",
]
