"""Continuous piecewise-linear finite elements on (0, 1).

Homogeneous Dirichlet conditions are imposed by dropping the two boundary
nodes, so every vector here is indexed by the interior nodes x_1..x_M.
"""

from collections.abc import Callable

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from fracdg.domain.quadrature import gauss_legendre
from fracdg.exceptions import InvalidInputError
from fracdg.models.system import FemGrid

QUAD_ORDER = 4

_LOCAL_STIFFNESS = np.array([[1.0, -1.0], [-1.0, 1.0]])
_LOCAL_MASS = np.array([[2.0, 1.0], [1.0, 2.0]]) / 6.0


def build_grid(h: float) -> FemGrid:
    """Assemble mass and stiffness matrices on the uniform grid of width h.

    Args:
        h: Mesh width; 1/h must be an integer of at least 2.

    Raises:
        InvalidInputError: If 1/h is not an integer of at least 2.
    """
    if not 0 < h < 1:
        raise InvalidInputError(h, "Mesh width must lie in (0, 1).")
    elements = round(1 / h)
    if elements < 2 or abs(elements * h - 1) > 1e-12:
        raise InvalidInputError(h, "Mesh width must be 1/k for an integer k >= 2.")
    h = 1.0 / elements

    first = np.arange(elements)
    pairs = np.stack((first, first + 1), axis=1)
    rows = np.repeat(pairs, 2, axis=1).ravel()
    cols = np.tile(pairs, (1, 2)).ravel()
    shape = (elements + 1, elements + 1)

    stiffness = sparse.coo_matrix(
        (np.tile(_LOCAL_STIFFNESS.ravel() / h, elements), (rows, cols)), shape=shape
    ).tocsr()[1:-1, 1:-1]
    mass = sparse.coo_matrix(
        (np.tile(_LOCAL_MASS.ravel() * h, elements), (rows, cols)), shape=shape
    ).tocsr()[1:-1, 1:-1]

    nodes = h * np.arange(1, elements)
    return FemGrid(h=h, M=elements - 1, nodes=nodes, mass=mass, stiffness=stiffness)


def _element_points(grid: FemGrid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Quadrature points (E, Q), weights (Q,) and reference coordinates (Q,)."""
    xi, w = gauss_legendre(QUAD_ORDER)
    left = grid.h * np.arange(grid.M + 1)
    return left[:, None] + grid.h * xi[None, :], grid.h * w, xi


def _with_boundary(coefficients: np.ndarray) -> np.ndarray:
    return np.concatenate(([0.0], np.asarray(coefficients, dtype=float), [0.0]))


def load_vector(grid: FemGrid, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Return ``<func, phi_i>`` for every interior hat function phi_i."""
    x, w, xi = _element_points(grid)
    values = func(x) * w[None, :]
    full = np.zeros(grid.M + 2)
    full[:-1] += values @ (1 - xi)
    full[1:] += values @ xi
    return full[1:-1]


def evaluate(grid: FemGrid, coefficients: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate a finite element function at points of [0, 1]."""
    x = np.asarray(x, dtype=float)
    full = _with_boundary(coefficients)
    return np.interp(x, np.linspace(0.0, 1.0, grid.M + 2), full)


def l2_error(
    grid: FemGrid, coefficients: np.ndarray, exact: Callable[[np.ndarray], np.ndarray]
) -> float:
    """L2(0, 1) distance between a finite element function and ``exact``."""
    x, w, xi = _element_points(grid)
    full = _with_boundary(coefficients)
    approx = full[:-1, None] * (1 - xi)[None, :] + full[1:, None] * xi[None, :]
    return float(np.sqrt(np.sum((approx - exact(x)) ** 2 * w[None, :])))


def interpolate(grid: FemGrid, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Nodal interpolant at the interior nodes."""
    return np.asarray(func(grid.nodes), dtype=float)


def l2_projection(grid: FemGrid, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """L2 projection onto the finite element space, solving M c = <func, phi>."""
    return sparse_linalg.splu(grid.mass.tocsc()).solve(load_vector(grid, func))
