"""Density table export."""

from src.measures.models import DensityTable
from src.types import JsonObject


def density_rows(table: DensityTable) -> list[dict[str, float]]:
    """One CSV row per bin: bin_lower, bin_upper, density."""
    width = table.bin_width
    return [
        {"bin_lower": index * width, "bin_upper": (index + 1) * width, "density": value}
        for index, value in enumerate(table.values)
    ]


def density_json(table: DensityTable) -> JsonObject:
    """Density values with residual and bound metadata."""
    return table.model_dump(mode="json")
