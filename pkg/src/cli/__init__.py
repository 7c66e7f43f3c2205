"""Experiment manifests, the run loop and the command-line front-end."""

from src.cli.io import csv_rows, manifest_from_data, record_csv, record_json, render
from src.cli.models import (
    Aggregate,
    Command,
    ExperimentManifest,
    GateOverrides,
    ObservableInput,
    OutputFormat,
    RunRecord,
    StartResult,
)
from src.cli.runner import aggregate, required_steps, resolve_precision, run

__all__ = [
    "Aggregate",
    "Command",
    "ExperimentManifest",
    "GateOverrides",
    "ObservableInput",
    "OutputFormat",
    "RunRecord",
    "StartResult",
    "aggregate",
    "csv_rows",
    "manifest_from_data",
    "record_csv",
    "record_json",
    "render",
    "required_steps",
    "resolve_precision",
    "run",
]
