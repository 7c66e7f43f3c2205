"""Input error exceptions: malformed maps, symbols, manifests and ranges."""

from typing import Any, ClassVar

from src.exceptions.base import JointNormalityError


class InputError(JointNormalityError):
    """Base class for all errors caused by caller-supplied input."""

    error_code: ClassVar[str] = "INPUT_ERROR"


class ValidationError(InputError):
    """Input validation failed.

    Raise when a value is outside the range an operation accepts.
    """

    error_code: ClassVar[str] = "VALIDATION_ERROR"

    def __init__(
        self,
        message: str,
        *,
        field: str | None = None,
        value: Any = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize validation error with optional field info.

        Args:
            message: Description of the validation failure.
            field: Name of the field that failed validation.
            value: The invalid value.
            context: Additional context information.
        """
        context_dict = context or {}
        if field is not None:
            context_dict["field"] = field
        if value is not None:
            context_dict["value"] = value
        super().__init__(message, context=context_dict)


class MapGrammarError(InputError):
    """A map description string does not follow the map grammar."""

    error_code: ClassVar[str] = "MAP_GRAMMAR_ERROR"

    def __init__(
        self,
        message: str,
        *,
        text: str | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize grammar error with the offending text.

        Args:
            message: Description of the parse failure.
            text: The map description that failed to parse.
            context: Additional context information.
        """
        context_dict = context or {}
        if text is not None:
            context_dict["text"] = text
        super().__init__(message, context=context_dict)


class InvalidSymbolError(InputError):
    """A digit symbol does not index a partition cell of the map."""

    error_code: ClassVar[str] = "INVALID_SYMBOL"

    def __init__(
        self,
        message: str,
        *,
        symbol: int | None = None,
        map_name: str | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize invalid symbol error.

        Args:
            message: Description of the failure.
            symbol: The rejected symbol.
            map_name: Grammar string of the map the symbol was checked against.
            context: Additional context information.
        """
        context_dict = context or {}
        if symbol is not None:
            context_dict["symbol"] = symbol
        if map_name is not None:
            context_dict["map"] = map_name
        super().__init__(message, context=context_dict)


class UnsupportedMapError(InputError):
    """The requested operation is not defined for this map family."""

    error_code: ClassVar[str] = "UNSUPPORTED_MAP"


class ManifestError(InputError):
    """An experiment manifest is invalid."""

    error_code: ClassVar[str] = "MANIFEST_ERROR"
