"""Precision and sampling models."""

from pydantic import BaseModel, ConfigDict, Field

from src.constants import SEED_BITS


class PrecisionConfig(BaseModel):
    """Working precision for one orbit computation.

    Attributes:
        bits: Mantissa precision of enclosure endpoints.
        max_steps: Orbit length the precision was budgeted for.
        resolve_width: Largest enclosure width at which a digit is still decided.
    """

    model_config = ConfigDict(frozen=True)

    bits: int = Field(ge=64)
    max_steps: int = Field(default=1, ge=1)
    resolve_width: float = Field(default=2.0**-20, gt=0, lt=1)


class SampleSpec(BaseModel):
    """Seed and precision of a pseudo-random sample point."""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=2**SEED_BITS)
    bits: int = Field(ge=64)
