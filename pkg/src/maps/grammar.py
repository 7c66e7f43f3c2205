"""Map description grammar used by manifests and the command line.

Grammar::

    timesb:<b>
    beta:<decimal|golden>
    linmod1:<beta>,<gamma>
    gauss
    rotation:<decimal|sqrt2m1|golden>
"""

import re
from fractions import Fraction

import pydantic

from src.exceptions import MapGrammarError
from src.maps.models import MapFamily, MapSpec

_DECIMAL = re.compile(r"^\d+(\.\d+)?$")
_SLOPE_NAMES = ("golden",)
_ROTATION_NAMES = ("golden", "sqrt2m1")


def parse_map(text: str) -> MapSpec:
    """Parse a map description.

    Args:
        text: A string such as ``"timesb:10"`` or ``"linmod1:2.5,0.3"``.

    Returns:
        The validated map.

    Raises:
        MapGrammarError: If the text does not follow the grammar or the
            parameters are out of range.
    """
    cleaned = text.strip().lower()
    family_text, _, argument = cleaned.partition(":")
    try:
        family = MapFamily(family_text)
    except ValueError as error:
        raise MapGrammarError(f"Unknown map family '{family_text}'", text=text) from error
    try:
        return _build(family, argument, text)
    except pydantic.ValidationError as error:
        reason = error.errors()[0]["msg"]
        raise MapGrammarError(f"Invalid parameters for {family}: {reason}", text=text) from error


def format_map(spec: MapSpec) -> str:
    """Inverse of :func:`parse_map`."""
    match spec.family:
        case MapFamily.TIMES_B:
            return f"timesb:{spec.base}"
        case MapFamily.BETA:
            return f"beta:{spec.beta}"
        case MapFamily.LINEAR_MOD_ONE:
            return f"linmod1:{spec.beta},{spec.gamma}"
        case MapFamily.GAUSS:
            return "gauss"
        case MapFamily.ROTATION:
            return f"rotation:{spec.alpha}"


def _build(family: MapFamily, argument: str, text: str) -> MapSpec:
    match family:
        case MapFamily.TIMES_B:
            if not argument.isdigit():
                raise MapGrammarError("timesb expects an integer base", text=text)
            return MapSpec(family=family, base=int(argument))
        case MapFamily.BETA:
            return MapSpec(family=family, beta=_parameter(argument, _SLOPE_NAMES, text))
        case MapFamily.LINEAR_MOD_ONE:
            slope_text, separator, offset_text = argument.partition(",")
            if not separator:
                raise MapGrammarError("linmod1 expects '<beta>,<gamma>'", text=text)
            return MapSpec(
                family=family,
                beta=_parameter(slope_text, _SLOPE_NAMES, text),
                gamma=_parameter(offset_text, (), text),
            )
        case MapFamily.GAUSS:
            if argument:
                raise MapGrammarError("gauss takes no parameters", text=text)
            return MapSpec(family=family)
        case MapFamily.ROTATION:
            return MapSpec(family=family, alpha=_parameter(argument, _ROTATION_NAMES, text))


def _parameter(value: str, names: tuple[str, ...], text: str) -> str:
    cleaned = value.strip()
    if cleaned in names:
        return cleaned
    if not _DECIMAL.match(cleaned):
        raise MapGrammarError(f"Cannot parse parameter '{cleaned}'", text=text)
    # normalise "2.50" and "2.5" to the same key
    exact = Fraction(cleaned)
    return _decimal_text(exact, cleaned)


def _decimal_text(exact: Fraction, original: str) -> str:
    if exact.denominator == 1:
        return str(exact.numerator)
    stripped = original.rstrip("0")
    return stripped
