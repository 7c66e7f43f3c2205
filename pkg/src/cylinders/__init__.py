"""Cylinder sets: intervals, admissibility, enumeration and continued fraction convergents."""

from src.cylinders.convergents import (
    cf_cylinder_endpoints,
    cf_cylinder_length,
    convergents,
    denominators,
)
from src.cylinders.geometry import (
    cylinder_bits,
    cylinder_count_bound,
    cylinder_interval,
    cylinder_log_measure,
    cylinder_measure,
    cylinder_of_point,
    enumerate_cylinders,
)
from src.cylinders.models import ConvergentPair, Cylinder, CylinderStatus

__all__ = [
    "ConvergentPair",
    "Cylinder",
    "CylinderStatus",
    "cf_cylinder_endpoints",
    "cf_cylinder_length",
    "convergents",
    "cylinder_bits",
    "cylinder_count_bound",
    "cylinder_interval",
    "cylinder_log_measure",
    "cylinder_measure",
    "cylinder_of_point",
    "denominators",
    "enumerate_cylinders",
]
