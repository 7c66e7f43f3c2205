"""Reproducible pseudo-random sample points."""

import logging

import numpy as np
from mpmath.libmp import from_man_exp

from src.interval.enclosure import EnclosedReal
from src.interval.models import SampleSpec

logger = logging.getLogger(__name__)


def sample_point(spec: SampleSpec) -> EnclosedReal:
    """Draw a point of [0, 1) from a seeded generator.

    The generator fills ``spec.bits`` random bits M and the point is the dyadic
    cell [M / 2^bits, (M + 1) / 2^bits]. The same seed and precision always
    give the same enclosure.

    Args:
        spec: Seed and precision.

    Returns:
        Enclosure of width exactly 2^-bits.
    """
    generator = np.random.default_rng(spec.seed)
    byte_count = (spec.bits + 7) // 8
    raw = int.from_bytes(generator.bytes(byte_count), "big")
    mantissa = raw >> (8 * byte_count - spec.bits)
    logger.debug("Sampled point for seed %d at %d bits", spec.seed, spec.bits)
    return EnclosedReal(
        lower=from_man_exp(mantissa, -spec.bits),
        upper=from_man_exp(mantissa + 1, -spec.bits),
        bits=spec.bits,
    )


def sample_points(seeds: list[int], bits: int) -> list[EnclosedReal]:
    """Sample one point per seed, in seed order."""
    return [sample_point(SampleSpec(seed=seed, bits=bits)) for seed in seeds]
