"""Type aliases shared across the lab."""

from enum import StrEnum
from fractions import Fraction
from typing import Annotated

from pydantic import BeforeValidator, PlainSerializer

# A finite digit string, e.g. a pattern or cylinder label
SymbolString = tuple[int, ...]


def _to_fraction(value: object) -> object:
    if isinstance(value, str | int):
        return Fraction(value)
    return value


# Exact rational carried by models; accepts "p/q" or decimal text, serialized as text in JSON
ExactRational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(str, return_type=str, when_used="json"),
]


class Verdict(StrEnum):
    """Outcome of a statistical or structural check."""

    PASS = "pass"
    FAIL = "fail"
    INVALID = "invalid"
    DISTINCT = "distinct"
    COLLISION = "collision"
    UNKNOWN = "unknown"
    NOT_APPLICABLE = "not_applicable"


# For truly dynamic JSON data
JsonObject = dict[str, object]
