"""Manifest loading and payload encoding."""

import csv
import io
import json
from collections.abc import Iterator
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict
from pydantic import ValidationError as PydanticValidationError

from src.cli.models import ExperimentManifest, OutputFormat, RunRecord
from src.exceptions import ManifestError, create_success_payload


class CsvRow(BaseModel):
    """One leaf value of a run record in long format."""

    model_config = ConfigDict(frozen=True)

    start: str
    kind: str
    key: str
    value: str


CSV_FIELDS = list(CsvRow.model_fields)


def manifest_from_data(data: dict[str, Any]) -> ExperimentManifest:
    """Validate manifest data.

    Raises:
        ManifestError: With the pydantic error list in the context.
    """
    try:
        return ExperimentManifest.model_validate(data)
    except PydanticValidationError as error:
        problems = [
            {"location": ".".join(str(part) for part in item["loc"]), "message": item["msg"]}
            for item in error.errors()
        ]
        raise ManifestError(
            f"Manifest is invalid: {problems[0]['message']}", context={"errors": problems}
        ) from error


def load_manifest(path: Path) -> dict[str, Any]:
    """Read manifest data from a JSON file.

    Raises:
        ManifestError: If the file is missing or not a JSON object.
    """
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as error:
        raise ManifestError(f"Cannot read manifest {path}: {error}") from error
    if not isinstance(data, dict):
        raise ManifestError(f"Manifest {path} is not a JSON object")
    return data


def record_json(record: RunRecord) -> str:
    """JSON text of a run record, keys sorted so reruns compare byte for byte."""
    payload = create_success_payload(record.model_dump(mode="json"))
    return json.dumps(payload, sort_keys=True, indent=2)


def _leaves(value: Any, prefix: str) -> Iterator[tuple[str, Any]]:
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _leaves(value[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, list) and any(isinstance(item, dict | list) for item in value):
        for index, item in enumerate(value):
            yield from _leaves(item, f"{prefix}[{index}]")
    else:
        yield prefix, value


def _cell(value: Any) -> str:
    if isinstance(value, list):
        return " ".join(_cell(item) for item in value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def csv_rows(record: RunRecord) -> list[CsvRow]:
    """Flatten a run record: one row per leaf of each result, then the aggregate."""
    rows = []
    for result in record.results:
        body = result.model_dump(mode="json", exclude={"start"})
        for key, value in _leaves(body, ""):
            kind = key.split(".", 1)[0]
            rows.append(CsvRow(start=result.start, kind=kind, key=key, value=_cell(value)))
    summary = {"aggregate": record.aggregate.model_dump(mode="json")}
    if record.entropy_check is not None:
        summary["entropy_check"] = record.entropy_check.model_dump(mode="json")
    for key, value in _leaves(summary, ""):
        rows.append(
            CsvRow(start="", kind=key.split(".", 1)[0], key=key, value=_cell(value))
        )
    return rows


def record_csv(record: RunRecord) -> str:
    """Long-format CSV of a run record."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in csv_rows(record):
        writer.writerow(row.model_dump())
    return buffer.getvalue()


def render(record: RunRecord, output: OutputFormat) -> str:
    """Encode a run record in the requested format."""
    if output == OutputFormat.CSV:
        return record_csv(record)
    return record_json(record)
