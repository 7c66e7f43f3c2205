"""Tests for computation error exceptions."""

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


class TestComputationError:
    def test_error_code(self):
        assert ComputationError("failed").error_code == "COMPUTATION_ERROR"

    def test_inherits_from_base(self):
        assert isinstance(ComputationError("failed"), JointNormalityError)


class TestStraddleError:
    def test_error_code(self):
        assert StraddleError("straddle").error_code == "STRADDLE"

    def test_boundary_in_context(self):
        error = StraddleError("straddle", boundary=0.5)
        assert error.context["boundary"] == 0.5


class TestGaussAtZeroError:
    def test_error_code(self):
        assert GaussAtZeroError("zero").error_code == "GAUSS_AT_ZERO"


class TestPrecisionExhaustedError:
    def test_error_code(self):
        assert PrecisionExhaustedError("short").error_code == "PRECISION_EXHAUSTED"

    def test_counts_in_context(self):
        error = PrecisionExhaustedError("short", achieved=12, requested=100)
        assert error.context == {"achieved": 12, "requested": 100}

    def test_zero_achieved_kept(self):
        error = PrecisionExhaustedError("short", achieved=0)
        assert error.context["achieved"] == 0


class TestConvergenceError:
    def test_error_code(self):
        assert ConvergenceError("slow").error_code == "CONVERGENCE_ERROR"

    def test_residual_in_context(self):
        error = ConvergenceError("slow", residual=1e-3)
        assert error.context["residual"] == 1e-3


class TestBudgetInfeasibleError:
    def test_error_code(self):
        assert BudgetInfeasibleError("too big").error_code == "BUDGET_INFEASIBLE"

    def test_budget_in_context(self):
        error = BudgetInfeasibleError("too big", required_bits=2_000_000, suggested_steps=400)
        assert error.context == {"required_bits": 2_000_000, "suggested_steps": 400}


class TestEnumerationLimitError:
    def test_error_code(self):
        assert EnumerationLimitError("many").error_code == "ENUMERATION_LIMIT"

    def test_cap_in_context(self):
        error = EnumerationLimitError("many", cap=10)
        assert error.context["cap"] == 10


class TestTailBoundError:
    def test_error_code(self):
        assert TailBoundError("tail").error_code == "TAIL_BOUND_EXCEEDED"

    def test_bound_and_tolerance_in_context(self):
        error = TailBoundError("tail", bound=1e-6, tolerance=1e-10)
        assert error.context == {"bound": 1e-6, "tolerance": 1e-10}

    def test_omitted_values_not_in_context(self):
        error = TailBoundError("tail")
        assert error.context == {}
