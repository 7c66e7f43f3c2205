"""Exception handling utilities for the command-line front-end."""

import json
import logging
import sys
from collections.abc import Callable
from functools import wraps
from typing import Any, TextIO

from src.constants import EXIT_CODE_ERROR
from src.exceptions.base import JointNormalityError

logger = logging.getLogger(__name__)

ErrorPayload = dict[str, Any]


def create_error_payload(
    exception: JointNormalityError,
    *,
    include_context: bool = True,
    run_id: str | None = None,
) -> ErrorPayload:
    """Create a report payload describing an error.

    Args:
        exception: The JointNormalityError to convert.
        include_context: Whether to include context in the payload.
        run_id: Optional manifest hash of the run that failed.

    Returns:
        JSON-serializable error payload.
    """
    body: ErrorPayload = {
        "status": "error",
        "title": _format_error_title(exception.error_code),
        "error_code": exception.error_code,
        "exit_code": exception.exit_code,
        "detail": exception.message,
    }

    if run_id:
        body["run_id"] = run_id

    if include_context and exception.context:
        body["context"] = exception.context

    return body


def create_success_payload(body: dict[str, Any]) -> ErrorPayload:
    """Wrap a report body in the success envelope.

    Args:
        body: Report body dictionary.

    Returns:
        JSON-serializable payload.
    """
    return {"status": "ok", **body}


def create_exception_handler[**P](
    func: Callable[P, int],
    *,
    stream: TextIO | None = None,
) -> Callable[P, int]:
    """Decorator that turns escaping JointNormalityErrors into exit codes.

    The wrapped command writes a JSON error payload to ``stream`` (stdout by
    default) and returns the error's exit code instead of raising.

    Args:
        func: The command function to wrap.
        stream: Where the error payload is written.

    Returns:
        Wrapped function that handles exceptions.
    """

    @wraps(func)
    def handle_call(*args: P.args, **kwargs: P.kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except JointNormalityError as error:
            logger.error("Command failed: %s", error.message, extra=error.to_log_dict())
            payload = create_error_payload(error)
            output = stream or sys.stdout
            output.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
            return error.exit_code

    return handle_call


def _format_error_title(error_code: str) -> str:
    """Format error code as human-readable title."""
    return error_code.replace("_", " ").title()


def get_exit_code_for_error_code(error_code: str) -> int:
    """Get the process exit code for an error code.

    Args:
        error_code: The error code to look up.

    Returns:
        Exit code, or 1 if not found.
    """
    exception_class = JointNormalityError.get_by_error_code(error_code)
    if exception_class is not None:
        return exception_class.exit_code
    return EXIT_CODE_ERROR
