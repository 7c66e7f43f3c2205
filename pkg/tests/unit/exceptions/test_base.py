"""Tests for base exception classes."""

from src.constants import EXIT_CODE_ERROR
from src.exceptions.base import JointNormalityError
from src.exceptions.input_errors import ValidationError


class TestJointNormalityError:
    def test_default_error_code(self):
        error = JointNormalityError("something failed")
        assert error.error_code == "INTERNAL_ERROR"

    def test_default_exit_code(self):
        error = JointNormalityError("something failed")
        assert error.exit_code == EXIT_CODE_ERROR

    def test_message_attribute(self):
        error = JointNormalityError("test message")
        assert error.message == "test message"

    def test_empty_context_by_default(self):
        error = JointNormalityError("test")
        assert error.context == {}

    def test_custom_context(self):
        context = {"map": "timesb:2"}
        error = JointNormalityError("test", context=context)
        assert error.context == context

    def test_to_dict(self):
        error = JointNormalityError("test message", context={"key": "value"})
        result = error.to_dict()
        assert result["error_code"] == "INTERNAL_ERROR"
        assert result["message"] == "test message"
        assert result["context"] == {"key": "value"}

    def test_to_log_dict(self):
        error = JointNormalityError("test message")
        result = error.to_log_dict()
        assert result["error_code"] == "INTERNAL_ERROR"
        assert result["exit_code"] == EXIT_CODE_ERROR
        assert result["exception_type"] == "JointNormalityError"

    def test_str_without_context(self):
        error = JointNormalityError("test message")
        assert str(error) == "test message"

    def test_str_with_context(self):
        error = JointNormalityError("test", context={"seed": 3})
        assert "context" in str(error)

    def test_repr(self):
        error = JointNormalityError("test")
        result = repr(error)
        assert "JointNormalityError" in result
        assert "test" in result

    def test_inherits_from_exception(self):
        error = JointNormalityError("test")
        assert isinstance(error, Exception)


class TestExceptionRegistry:
    def test_base_not_in_registry(self):
        # Only subclasses register themselves
        result = JointNormalityError.get_by_error_code("INTERNAL_ERROR")
        assert result is None

    def test_unknown_code_returns_none(self):
        result = JointNormalityError.get_by_error_code("NONEXISTENT")
        assert result is None

    def test_subclass_auto_registers(self):
        result = JointNormalityError.get_by_error_code("VALIDATION_ERROR")
        assert result is ValidationError
