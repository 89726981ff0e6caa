"""Spatial problem models."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from attrs import field, frozen
from scipy import sparse


@frozen
class FemGrid:
    """Uniform 1D grid of continuous piecewise-linear elements on (0, 1).

    Only interior nodes carry degrees of freedom; the homogeneous Dirichlet
    conditions are imposed by leaving the boundary nodes out.

    Attributes:
        h: Mesh width.
        M: Number of interior nodes, 1/h - 1.
        nodes: Interior node coordinates x_1..x_M.
        mass: Tridiagonal mass matrix with rows (h/6)[1, 4, 1].
        stiffness: Tridiagonal stiffness matrix with rows (1/h)[-1, 2, -1].
    """

    h: float
    M: int
    nodes: np.ndarray = field(eq=False, repr=False)
    mass: sparse.csr_matrix = field(eq=False, repr=False)
    stiffness: sparse.csr_matrix = field(eq=False, repr=False)


@frozen
class SpatialSystem:
    """A spatial problem advanced in time by the DG solver.

    Attributes:
        name: Short identifier of the problem.
        mass: Symmetric positive definite mass operator.
        stiffness: Symmetric positive semidefinite stiffness operator.
        load: Maps an array of K times to the (K, M) array of load vectors.
        u0: Initial data in degree-of-freedom coordinates.
        exact: Optional exact solution in degree-of-freedom coordinates.
        exact_field: Optional exact solution u(x, t) as a function of space,
            used for L2 errors when the system is FEM-backed.
        grid: The finite element grid, None for scalar problems.
    """

    name: str
    mass: sparse.csr_matrix = field(eq=False, repr=False)
    stiffness: sparse.csr_matrix = field(eq=False, repr=False)
    load: Callable[[np.ndarray], np.ndarray] = field(eq=False, repr=False)
    u0: np.ndarray = field(eq=False, repr=False)
    exact: Callable[[float], np.ndarray] | None = field(
        default=None, eq=False, repr=False
    )
    exact_field: Callable[[np.ndarray, float], np.ndarray] | None = field(
        default=None, eq=False, repr=False
    )
    grid: FemGrid | None = None

    @property
    def M(self) -> int:  # noqa: N802
        """Number of spatial degrees of freedom."""
        return int(self.u0.size)

    @property
    def is_scalar(self) -> bool:
        """Whether the system is a single ordinary differential equation."""
        return self.grid is None and self.M == 1
