"""Joint normality lab exception hierarchy.

Architecture:
    JointNormalityError (base)
    ├── InputError
    │   ├── ValidationError
    │   ├── MapGrammarError
    │   ├── InvalidSymbolError
    │   ├── UnsupportedMapError
    │   └── ManifestError
    └── ComputationError
        ├── StraddleError
        ├── GaussAtZeroError
        ├── PrecisionExhaustedError
        ├── ConvergenceError
        ├── BudgetInfeasibleError
        ├── EnumerationLimitError
        └── TailBoundError

Usage:
    from src.exceptions import StraddleError

    def digit(map_spec: MapSpec, point: EnclosedReal) -> int:
        if lower_symbol != upper_symbol:
            raise StraddleError(
                "Enclosure meets two partition cells",
                boundary=boundary,
            )
        return lower_symbol
"""

from src.exceptions.base import JointNormalityError
from src.exceptions.computation_errors import (
    BudgetInfeasibleError,
    ComputationError,
    ConvergenceError,
    EnumerationLimitError,
    GaussAtZeroError,
    PrecisionExhaustedError,
    StraddleError,
    TailBoundError,
)
from src.exceptions.handlers import (
    create_error_payload,
    create_exception_handler,
    create_success_payload,
    get_exit_code_for_error_code,
)
from src.exceptions.input_errors import (
    InputError,
    InvalidSymbolError,
    ManifestError,
    MapGrammarError,
    UnsupportedMapError,
    ValidationError,
)

__all__ = [
    "BudgetInfeasibleError",
    "ComputationError",
    "ConvergenceError",
    "EnumerationLimitError",
    "GaussAtZeroError",
    "InputError",
    "InvalidSymbolError",
    "JointNormalityError",
    "ManifestError",
    "MapGrammarError",
    "PrecisionExhaustedError",
    "StraddleError",
    "TailBoundError",
    "UnsupportedMapError",
    "ValidationError",
    "create_error_payload",
    "create_exception_handler",
    "create_success_payload",
    "get_exit_code_for_error_code",
]
