"""Certified real arithmetic on the unit interval.

Points are carried as :class:`EnclosedReal` enclosures with outward rounding;
:func:`required_bits` sizes the working precision for an orbit of given length.
"""

from src.interval.budget import ExpandingMap, check_budget, required_bits
from src.interval.enclosure import (
    EnclosedReal,
    MpfValue,
    compare_to_fraction,
    dyadic,
    make_enclosure,
    named_constant,
    parse_point,
)
from src.interval.models import PrecisionConfig, SampleSpec
from src.interval.sampling import sample_point, sample_points

__all__ = [
    "EnclosedReal",
    "ExpandingMap",
    "MpfValue",
    "PrecisionConfig",
    "SampleSpec",
    "check_budget",
    "compare_to_fraction",
    "dyadic",
    "make_enclosure",
    "named_constant",
    "parse_point",
    "required_bits",
    "sample_point",
    "sample_points",
]
