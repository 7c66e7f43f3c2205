"""Computation error exceptions: precision, convergence and budget failures."""

from typing import Any, ClassVar

from src.exceptions.base import JointNormalityError


class ComputationError(JointNormalityError):
    """Base class for failures that happen while computing."""

    error_code: ClassVar[str] = "COMPUTATION_ERROR"


class StraddleError(ComputationError):
    """An enclosure meets more than one partition cell."""

    error_code: ClassVar[str] = "STRADDLE"

    def __init__(
        self,
        message: str,
        *,
        boundary: float | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize straddle error.

        Args:
            message: Description of the failure.
            boundary: Approximate location of the cell boundary that was met.
            context: Additional context information.
        """
        context_dict = context or {}
        if boundary is not None:
            context_dict["boundary"] = boundary
        super().__init__(message, context=context_dict)


class GaussAtZeroError(ComputationError):
    """The Gauss map was applied to an enclosure containing 0."""

    error_code: ClassVar[str] = "GAUSS_AT_ZERO"


class PrecisionExhaustedError(ComputationError):
    """An orbit ran out of certified precision before the requested length."""

    error_code: ClassVar[str] = "PRECISION_EXHAUSTED"

    def __init__(
        self,
        message: str,
        *,
        achieved: int | None = None,
        requested: int | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize precision exhaustion error.

        Args:
            message: Description of the failure.
            achieved: Number of certified steps that were reached.
            requested: Number of steps that were requested.
            context: Additional context information.
        """
        context_dict = context or {}
        if achieved is not None:
            context_dict["achieved"] = achieved
        if requested is not None:
            context_dict["requested"] = requested
        super().__init__(message, context=context_dict)


class ConvergenceError(ComputationError):
    """Power iteration did not reach its tolerance."""

    error_code: ClassVar[str] = "CONVERGENCE_ERROR"

    def __init__(
        self,
        message: str,
        *,
        residual: float | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize convergence error.

        Args:
            message: Description of the failure.
            residual: Last sup-norm change of the iteration.
            context: Additional context information.
        """
        context_dict = context or {}
        if residual is not None:
            context_dict["residual"] = residual
        super().__init__(message, context=context_dict)


class BudgetInfeasibleError(ComputationError):
    """The precision needed for a run exceeds the configured bit cap."""

    error_code: ClassVar[str] = "BUDGET_INFEASIBLE"

    def __init__(
        self,
        message: str,
        *,
        required_bits: int | None = None,
        suggested_steps: int | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize budget error.

        Args:
            message: Description of the failure.
            required_bits: Precision the run would need.
            suggested_steps: Largest orbit length that fits the cap.
            context: Additional context information.
        """
        context_dict = context or {}
        if required_bits is not None:
            context_dict["required_bits"] = required_bits
        if suggested_steps is not None:
            context_dict["suggested_steps"] = suggested_steps
        super().__init__(message, context=context_dict)


class EnumerationLimitError(ComputationError):
    """Cylinder or branch enumeration would exceed its cap."""

    error_code: ClassVar[str] = "ENUMERATION_LIMIT"

    def __init__(
        self,
        message: str,
        *,
        cap: int | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize enumeration limit error.

        Args:
            message: Description of the failure.
            cap: The configured limit.
            context: Additional context information.
        """
        context_dict = context or {}
        if cap is not None:
            context_dict["cap"] = cap
        super().__init__(message, context=context_dict)


class TailBoundError(ComputationError):
    """A truncated branch sum has a tail bound above the requested tolerance."""

    error_code: ClassVar[str] = "TAIL_BOUND_EXCEEDED"

    def __init__(
        self,
        message: str,
        *,
        bound: float | None = None,
        tolerance: float | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Initialize tail bound error.

        Args:
            message: Description of the failure.
            bound: The certified bound on the discarded branches.
            tolerance: The requested tolerance.
            context: Additional context information.
        """
        context_dict = context or {}
        if bound is not None:
            context_dict["bound"] = bound
        if tolerance is not None:
            context_dict["tolerance"] = tolerance
        super().__init__(message, context=context_dict)
