"""Run adapter for setting logging context from an experiment manifest."""

from src.logging.context import (
    RUN_ID_LENGTH,
    generate_correlation_id,
    set_correlation_id,
    set_extra_context,
)


def set_run_context(manifest_hash: str | None, command: str, *, seed: int | None = None) -> str:
    """Set logging context for an experiment run.

    The correlation ID is the manifest hash prefix, so every record of one run
    (across worker processes) can be grouped. Runs without a manifest hash get
    a random run id.

    Args:
        manifest_hash: SHA-256 hex digest of the canonical manifest, if any.
        command: The manifest command being executed.
        seed: Seed currently being processed, if any.

    Returns:
        The run id now in the context.
    """
    if manifest_hash:
        run_id = manifest_hash[:RUN_ID_LENGTH]
        set_correlation_id(run_id)
    else:
        run_id = generate_correlation_id()
    set_extra_context(command=command)
    if seed is not None:
        set_extra_context(seed=seed)
    return run_id
