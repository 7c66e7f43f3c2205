"""Transfer (Frobenius-Perron) operators and invariant densities.

Densities live on a uniform grid of [0, 1]. One application of the operator
sends a bin to the sum over inverse branches of the mean of the density over
the branch preimage of that bin; preimages that cut input bins are weighted
by exact overlap length, so total mass is preserved up to rounding.
"""

import logging
import math
from functools import lru_cache

import mpmath
import numpy as np

from src.config import get_settings
from src.exceptions import ConvergenceError, UnsupportedMapError
from src.maps import MapSpec
from src.measures.models import DensityTable, GaussFixedPointCheck, InverseBranch

logger = logging.getLogger(__name__)

_LOG_TWO = math.log(2.0)
_DEFAULT_CHECK_POINTS = 201

SparseMatrix = tuple[np.ndarray, np.ndarray, np.ndarray]


def inverse_branches(spec: MapSpec) -> list[InverseBranch]:
    """Inverse branches of an affine map with their image intervals.

    Raises:
        UnsupportedMapError: For the Gauss map and rotations.
    """
    if not spec.is_affine:
        raise UnsupportedMapError(f"{spec.name} has no finite affine branch family")
    slope = spec.slope_float()
    shift = float(spec.shift_fraction())
    branches = []
    for symbol in spec.symbols():
        image_lower = max(0.0, shift - symbol)
        image_upper = min(1.0, slope + shift - symbol)
        if image_upper > image_lower:
            branches.append(
                InverseBranch(
                    symbol=symbol,
                    slope=slope,
                    shift=shift,
                    image_lower=image_lower,
                    image_upper=image_upper,
                )
            )
    return branches


def gauss_inverse_branches(branch_cap: int) -> list[InverseBranch]:
    """The first ``branch_cap`` inverse branches y -> 1/(j + y) of the Gauss map."""
    return [
        InverseBranch(symbol=symbol, slope=1.0, gauss=True)
        for symbol in range(1, branch_cap + 1)
    ]


def renyi_bounds(spec: MapSpec) -> tuple[float, float] | None:
    """Density envelope [1 - 1/beta, 1/(1 - 1/beta)] for maps x -> beta x mod 1."""
    if not spec.is_affine or spec.shift_fraction() != 0:
        return None
    contraction = 1.0 - 1.0 / spec.slope_float()
    return contraction, 1.0 / contraction


@lru_cache(maxsize=32)
def transfer_matrix(spec: MapSpec, grid_size: int) -> SparseMatrix:
    """Sparse (row, column, weight) form of the grid transfer operator."""
    width = 1.0 / grid_size
    edges = np.arange(grid_size + 1, dtype=float) * width
    rows: list[np.ndarray] = []
    columns: list[np.ndarray] = []
    weights: list[np.ndarray] = []
    for branch in inverse_branches(spec):
        image_start = np.maximum(edges[:-1], branch.image_lower)
        image_end = np.minimum(edges[1:], branch.image_upper)
        valid = image_end > image_start
        output_bins = np.nonzero(valid)[0]
        start = (image_start[valid] + branch.symbol - branch.shift) / branch.slope
        end = (image_end[valid] + branch.symbol - branch.shift) / branch.slope
        first = np.clip(np.floor(start * grid_size).astype(np.int64), 0, grid_size - 1)
        split = (first + 1) * width
        # a preimage is shorter than one bin, so it meets at most two input bins
        first_part = np.minimum(end, split) - start
        second_part = np.maximum(end - split, 0.0)
        second = np.minimum(first + 1, grid_size - 1)
        rows.extend([output_bins, output_bins])
        columns.extend([first, second])
        weights.extend([first_part / width, second_part / width])
    row_array = np.concatenate(rows)
    column_array = np.concatenate(columns)
    weight_array = np.concatenate(weights)
    keep = weight_array > 0
    return row_array[keep], column_array[keep], weight_array[keep]


def _apply_matrix(matrix: SparseMatrix, values: np.ndarray) -> np.ndarray:
    rows, columns, weights = matrix
    return np.bincount(rows, weights=weights * values[columns], minlength=values.size)


def transfer_apply(spec: MapSpec, density: DensityTable) -> DensityTable:
    """One application of the transfer operator to a grid density.

    Args:
        spec: A beta, linear mod one or times-b map.
        density: Input density on any grid.

    Returns:
        The image density on the same grid; ``residual`` is the sup change.

    Raises:
        UnsupportedMapError: For maps without a finite affine branch family.
    """
    values = density.as_array()
    updated = _apply_matrix(transfer_matrix(spec, density.grid_size), values)
    return DensityTable(
        map_name=spec.name,
        grid_size=density.grid_size,
        values=tuple(updated.tolist()),
        residual=float(np.max(np.abs(updated - values))),
        iterations=density.iterations + 1,
        converged=False,
    )


def constant_density(spec: MapSpec, grid_size: int) -> DensityTable:
    """The Lebesgue density on a grid."""
    return DensityTable(map_name=spec.name, grid_size=grid_size, values=(1.0,) * grid_size)


def invariant_density(
    spec: MapSpec,
    grid_size: int | None = None,
    tolerance: float | None = None,
    max_iterations: int | None = None,
    *,
    require_convergence: bool = True,
) -> DensityTable:
    """Invariant density by power iteration from the constant density.

    Args:
        spec: A beta, linear mod one or times-b map.
        grid_size: Number of bins; defaults to the configured grid size.
        tolerance: Stop when the sup change falls below this value.
        max_iterations: Iteration cap.
        require_convergence: Raise instead of returning an unconverged table.

    Returns:
        Normalized density with its residual and, for x -> beta x mod 1, the
        Renyi envelope attached.

    Raises:
        ConvergenceError: If the cap is reached and ``require_convergence``.
    """
    settings = get_settings()
    return _invariant_density(
        spec,
        grid_size or settings.density_grid_size,
        tolerance or settings.density_tolerance,
        max_iterations or settings.density_max_iterations,
        require_convergence,
    )


@lru_cache(maxsize=32)
def _invariant_density(
    spec: MapSpec,
    grid_size: int,
    tolerance: float,
    max_iterations: int,
    require_convergence: bool,
) -> DensityTable:
    matrix = transfer_matrix(spec, grid_size)
    values = np.ones(grid_size)
    residual = math.inf
    iterations = 0
    while iterations < max_iterations and residual >= tolerance:
        updated = _apply_matrix(matrix, values)
        updated *= grid_size / updated.sum()
        residual = float(np.max(np.abs(updated - values)))
        values = updated
        iterations += 1
    converged = residual < tolerance
    if not converged:
        logger.warning(
            "Density of %s did not converge: residual %.3e after %d iterations",
            spec.name,
            residual,
            iterations,
        )
        if require_convergence:
            raise ConvergenceError(
                f"Invariant density of {spec.name} did not converge",
                residual=residual,
            )
    logger.debug("Density of %s converged in %d iterations", spec.name, iterations)
    bounds = renyi_bounds(spec)
    return DensityTable(
        map_name=spec.name,
        grid_size=grid_size,
        values=tuple(values.tolist()),
        residual=residual,
        iterations=iterations,
        converged=converged,
        renyi_lower=bounds[0] if bounds else None,
        renyi_upper=bounds[1] if bounds else None,
    )


def gauss_transfer_fixed_point_defect(
    branch_cap: int | None = None,
    points: int = _DEFAULT_CHECK_POINTS,
) -> GaussFixedPointCheck:
    """Apply the Gauss operator truncated at ``branch_cap`` to the Gauss density.

    Returns:
        The sup defect on a uniform set of points together with the tail bound
        (1/log 2) * sum_{j > cap} 1/j^2 that the truncated branches can carry.
    """
    cap = branch_cap or get_settings().gauss_branch_cap
    grid = np.linspace(0.0, 1.0, points)
    shifted = np.arange(1, cap + 1, dtype=float)[:, None] + grid[None, :]
    image = np.sum(_gauss_density_array(1.0 / shifted) / shifted**2, axis=0)
    defect = float(np.max(np.abs(image - _gauss_density_array(grid))))
    tail = float(mpmath.zeta(2, cap + 1)) / _LOG_TWO
    return GaussFixedPointCheck(
        branch_cap=cap,
        max_defect=defect,
        tail_bound=tail,
        points_checked=points,
    )


def _gauss_density_array(points: np.ndarray) -> np.ndarray:
    return 1.0 / ((1.0 + points) * _LOG_TWO)
