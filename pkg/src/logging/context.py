"""Run-scoped logging context.

A run is identified by a short run id, the manifest hash prefix when the run
came from a manifest. Seed workers set their own copy, so records from every
worker process of one run share the id. Run fields such as the command and
the seed are attached to every record.
"""

from contextvars import ContextVar
from typing import Any
from uuid import uuid4

RUN_ID_LENGTH = 12

correlation_id: ContextVar[str] = ContextVar("correlation_id", default="")

_run_fields: ContextVar[dict[str, Any] | None] = ContextVar("run_fields", default=None)


def get_correlation_id() -> str:
    """Run id of the current context, empty outside a run."""
    return correlation_id.get()


def set_correlation_id(value: str) -> None:
    correlation_id.set(value)


def generate_correlation_id() -> str:
    """Set and return a fresh run id of ``RUN_ID_LENGTH`` hex digits."""
    run_id = uuid4().hex[:RUN_ID_LENGTH]
    correlation_id.set(run_id)
    return run_id


def get_extra_context() -> dict[str, Any]:
    """Copy of the run fields attached to every record."""
    fields = _run_fields.get()
    return {} if fields is None else fields.copy()


def set_extra_context(**kwargs: Any) -> None:
    """Add or overwrite run fields such as ``command`` or ``seed``."""
    fields = _run_fields.get()
    _run_fields.set({**(fields or {}), **kwargs})


def clear_context() -> None:
    """Forget the run id and every run field."""
    correlation_id.set("")
    _run_fields.set(None)
