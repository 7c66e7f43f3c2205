"""Interval maps, their generating partitions and certified orbits."""

from src.maps.dynamics import (
    MapImage,
    OrbitIterator,
    apply,
    digit,
    digits_needed,
    iterate_orbit,
    orbit_digits,
    partition_cells,
    reconstruct_base_b,
)
from src.maps.grammar import format_map, parse_map
from src.maps.invariants import ClosedFormEntropy, closed_form_entropy, expansion_exponent
from src.maps.models import (
    DigitString,
    MapFamily,
    MapSpec,
    OrbitStep,
    OrbitStopReason,
    PartitionCell,
)

__all__ = [
    "ClosedFormEntropy",
    "DigitString",
    "MapFamily",
    "MapImage",
    "MapSpec",
    "OrbitIterator",
    "OrbitStep",
    "OrbitStopReason",
    "PartitionCell",
    "apply",
    "closed_form_entropy",
    "digit",
    "digits_needed",
    "expansion_exponent",
    "format_map",
    "iterate_orbit",
    "orbit_digits",
    "parse_map",
    "partition_cells",
    "reconstruct_base_b",
]
