"""Chebyshev collocation of the Gauss transfer operator.

(L g)(y) = sum_{j >= 1} g(1 / (j + y)) / (j + y)^2 is discretized on
Chebyshev nodes of [0, 1]. Branches j <= J are summed explicitly. For j > J
the argument 1/(j + y) is small, so g is replaced by its Taylor polynomial at
0 and each power sums to a Hurwitz zeta value.

Errors of one application are bounded separately: the Taylor remainder of
the interpolant, bounded through Markov's inequality on its Chebyshev
coefficients, and the interpolation error of the result, taken from its
trailing coefficients. L is a contraction in L^1, so these local errors add
up along an iteration without amplification.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from numpy.polynomial import chebyshev

logger = logging.getLogger(__name__)

TAYLOR_TERMS = 3
TRAILING_FRACTION = 4


@dataclass(frozen=True)
class GaussCollocation:
    """Collocation matrix with its tail data.

    Attributes:
        nodes: Collocation points y_i in (0, 1).
        matrix: Values of L g at the nodes from values of g at the nodes.
        inverse_vandermonde: Node values to Chebyshev coefficients.
        branch_cap: J.
        tail_mass: sum_{j > J} 1/j^2, the weight of the corrected branches.
        remainder_weights: Per-coefficient bound on the Taylor remainder of the
            corrected branches: zeta(R + 2, J + 1) 2^R T_k^(R)(1) / R!.
    """

    nodes: np.ndarray
    matrix: np.ndarray
    inverse_vandermonde: np.ndarray
    branch_cap: int
    tail_mass: float
    remainder_weights: np.ndarray

    def apply(self, values: np.ndarray) -> np.ndarray:
        return self.matrix @ values

    def coefficients(self, values: np.ndarray) -> np.ndarray:
        return self.inverse_vandermonde @ values

    def integral(self, values: np.ndarray, lower: float, upper: float) -> float:
        """Integral over [lower, upper] of the interpolant of ``values``."""
        antiderivative = chebyshev.chebint(self.coefficients(values))
        ends = chebyshev.chebval(np.array([2.0 * lower - 1.0, 2.0 * upper - 1.0]), antiderivative)
        return float(ends[1] - ends[0]) / 2.0

    def uncorrected_tail(self, values: np.ndarray) -> float:
        """sup|g| sum_{j > J} 1/j^2: what the truncated branches could carry."""
        return float(np.max(np.abs(values))) * self.tail_mass

    def remainder_bound(self, values: np.ndarray) -> float:
        """Sup-norm bound on the error of the Taylor tail correction for this interpolant.

        The remainder of branch j is at most sup|p^(R)| / R! (j + y)^-(R + 2), and
        sup over [-1, 1] of |T_k^(R)| is T_k^(R)(1).
        """
        return float(self.remainder_weights @ np.abs(self.coefficients(values)))

    def interpolation_error(self, values: np.ndarray) -> float:
        """Twice the trailing quarter of the Chebyshev coefficients, an aliasing estimate."""
        coefficients = np.abs(self.coefficients(values))
        trailing = max(1, len(coefficients) // TRAILING_FRACTION)
        return 2.0 * float(np.sum(coefficients[-trailing:]))

    def step_error(self, values: np.ndarray, image: np.ndarray) -> float:
        """Sup-norm bound on (L - L_N) p for the interpolant p of ``values``."""
        return self.remainder_bound(values) + self.interpolation_error(image)


def _derivative_at_origin(node_count: int, order: int) -> np.ndarray:
    """Row r with r . c = 2^order p^(order)(-1) / order! for Chebyshev coefficients c.

    p is the interpolant in x = 2y - 1, so d/dy = 2 d/dx.
    """
    row = np.zeros(node_count)
    for degree in range(node_count):
        basis = np.zeros(node_count)
        basis[degree] = 1.0
        row[degree] = chebyshev.chebval(-1.0, chebyshev.chebder(basis, order))
    return row * 2.0**order / math.factorial(order)


def _markov_weights(node_count: int, order: int) -> np.ndarray:
    """2^order T_k^(order)(1) / order!, the largest |d^order/dy^order T_k(2y - 1)| / order!."""
    degrees = np.arange(node_count, dtype=float) ** 2
    weights = np.ones(node_count)
    for index in range(order):
        weights *= np.clip(degrees - index**2, 0.0, None) / (2 * index + 1)
    return weights * 2.0**order / math.factorial(order)


@lru_cache(maxsize=8)
def gauss_collocation(node_count: int, branch_cap: int) -> GaussCollocation:
    """Build the collocation operator on ``node_count`` nodes with J = ``branch_cap``."""
    positions = np.cos(np.pi * (np.arange(node_count) + 0.5) / node_count)
    nodes = (1.0 + positions) / 2.0
    inverse_vandermonde = np.linalg.inv(chebyshev.chebvander(positions, node_count - 1))
    shifted = np.arange(1, branch_cap + 1, dtype=float)[:, None] + nodes[None, :]
    arguments = 1.0 / shifted
    branch_vandermonde = chebyshev.chebvander(2.0 * arguments - 1.0, node_count - 1)
    truncated = np.einsum("jd,jdk->dk", arguments**2, branch_vandermonde)
    tail = np.zeros((node_count, node_count))
    for order in range(TAYLOR_TERMS):
        weights = np.array(
            [float(mpmath.zeta(order + 2, branch_cap + 1 + node)) for node in nodes]
        )
        tail += np.outer(weights, _derivative_at_origin(node_count, order))
    matrix = (truncated + tail) @ inverse_vandermonde
    logger.debug("Gauss collocation with %d nodes and J=%d", node_count, branch_cap)
    return GaussCollocation(
        nodes=nodes,
        matrix=matrix,
        inverse_vandermonde=inverse_vandermonde,
        branch_cap=branch_cap,
        tail_mass=float(mpmath.zeta(2, branch_cap + 1)),
        remainder_weights=_markov_weights(node_count, TAYLOR_TERMS)
        * float(mpmath.zeta(TAYLOR_TERMS + 2, branch_cap + 1)),
    )
