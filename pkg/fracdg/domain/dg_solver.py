"""Interval-by-interval DG solver with direct or fast history evaluation.

Each step solves the (p + 1) M coupled system

    (B (x) Mass + G (x) Stiff) c = R - Mass H

for the coefficients of U on I_n, with H the history term of the earlier
intervals.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from typing import TYPE_CHECKING

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from fracdg.core.logging import logger
from fracdg.domain import dg_core
from fracdg.domain.frac_calc import ModeFactors, history_update, mode_factors
from fracdg.domain.soe_kernel import build_soe
from fracdg.exceptions import ConfigurationError, InvalidInputError, SolverError
from fracdg.models.config import SolveMode
from fracdg.models.trace import HistoryState, PolyTrace

if TYPE_CHECKING:
    from fracdg.models.kernel import SOEKernel
    from fracdg.models.mesh import GradedMesh
    from fracdg.models.system import SpatialSystem

DENSE_LIMIT = 4
"""Systems with at most this many spatial unknowns are solved densely."""


def default_eps(mesh: GradedMesh, alpha: float) -> float:
    """Kernel accuracy below the discretization error, min(1e-12, N^(-r alpha) / 100)."""
    return min(1e-12, 0.01 * mesh.N ** (-mesh.r * alpha))


def fast_kernel(mesh: GradedMesh, alpha: float, eps: float | None = None) -> SOEKernel:
    """Build the history kernel for omega_{-alpha} on [t_1, T]."""
    if mesh.N < 2:
        raise InvalidInputError(mesh.N, "Fast solves need at least two intervals.")
    eps = default_eps(mesh, alpha) if eps is None else eps
    return build_soe(-alpha, eps, float(mesh.points[1]), mesh.T)


def fast_error_bound(eps: float, mesh: GradedMesh, alpha: float, n: int | None = None) -> float:
    """Bound on the fast/direct nodal difference up to t_n, eps t_n^alpha t_1^(-alpha)."""
    n = mesh.N if n is None else n
    return eps * (mesh.points[n] / mesh.points[1]) ** alpha


class _SpaceTimeOperator:
    """Spatial matrices of a system, densified once for small systems."""

    def __init__(self, system: SpatialSystem) -> None:
        self.M = system.M
        self.dense = system.M <= DENSE_LIMIT
        if self.dense:
            self.mass = _dense(system.mass)
            self.stiffness = _dense(system.stiffness)
        else:
            self.mass = sparse.csr_matrix(system.mass)
            self.stiffness = sparse.csr_matrix(system.stiffness)

    def solve(self, n: int, blocks: dg_core.LocalBlocks, rhs: np.ndarray) -> np.ndarray:
        """Solve ``(B (x) Mass + G (x) Stiff) c = rhs`` for one interval."""
        p = blocks.B.shape[0] - 1
        try:
            if self.dense:
                matrix = np.kron(blocks.B, self.mass) + np.kron(blocks.G, self.stiffness)
                solution = np.linalg.solve(matrix, rhs.ravel())
            else:
                matrix = sparse.kron(blocks.B, self.mass) + sparse.kron(
                    blocks.G, self.stiffness
                )
                solution = sparse_linalg.splu(matrix.tocsc()).solve(rhs.ravel())
        except (np.linalg.LinAlgError, RuntimeError, ValueError) as exc:
            raise SolverError(n, f"Time step {n} could not be solved: {exc}") from exc
        if not np.all(np.isfinite(solution)):
            raise SolverError(n, f"Time step {n} produced non-finite coefficients.")
        return solution.reshape(p + 1, self.M)


def _step(
    n: int,
    system: SpatialSystem,
    operator: _SpaceTimeOperator,
    mesh: GradedMesh,
    alpha: float,
    p: int,
    history: np.ndarray,
    blocks: dg_core.LocalBlocks,
) -> np.ndarray:
    rhs = dg_core.rhs_assemble(n, system, mesh, alpha, p)
    rhs = rhs - (operator.mass @ history.T).T
    return operator.solve(n, blocks, rhs)


def step(
    n: int,
    system: SpatialSystem,
    mesh: GradedMesh,
    alpha: float,
    p: int,
    history: np.ndarray,
    blocks: dg_core.LocalBlocks | None = None,
) -> np.ndarray:
    """Solve for the coefficient block of I_n given its history term.

    Args:
        n: Interval index, 1-based.
        system: The spatial problem.
        mesh: The temporal mesh.
        alpha: Fractional order.
        p: Polynomial degree.
        history: History term H of shape (p + 1, M).
        blocks: Local matrices of I_n; built when None.

    Returns:
        The (p + 1, M) coefficient block.

    Raises:
        SolverError: If the linear system is singular or the result is not finite.
    """
    if blocks is None:
        blocks = dg_core.local_frac_block(alpha, p, mesh.step(n))
    return _step(n, system, _SpaceTimeOperator(system), mesh, alpha, p, history, blocks)


def _dense(matrix: sparse.spmatrix | np.ndarray) -> np.ndarray:
    return matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix, float)


def solve(
    system: SpatialSystem,
    mesh: GradedMesh,
    alpha: float,
    p: int,
    mode: SolveMode = SolveMode.DIRECT,
    kernel: SOEKernel | None = None,
    on_step: Callable[[int], None] | None = None,
) -> PolyTrace:
    """March the DG scheme over the whole mesh.

    Args:
        system: The spatial problem.
        mesh: The temporal mesh.
        alpha: Fractional order in (0, 1).
        p: Polynomial degree, at least 0.
        mode: Direct or fast history evaluation.
        kernel: History kernel for fast solves, see ``fast_kernel``.
        on_step: Optional callback receiving every finished step index.

    Returns:
        The solved trace.

    Raises:
        ConfigurationError: If a fast solve has no kernel or an unsuitable one.
        SolverError: If a step fails.
    """
    if not 0 < alpha < 1:
        raise InvalidInputError(alpha, "Fractional order alpha must lie in (0, 1).")
    if p < 0:
        raise InvalidInputError(p, "Polynomial degree must be nonnegative.")
    if mode == SolveMode.FAST:
        if kernel is None:
            raise ConfigurationError("Fast solves need a history kernel.")
        dg_core.check_fast_kernel(kernel, mesh, alpha)

    trace = PolyTrace(mesh, p, system.M, system.u0)
    operator = _SpaceTimeOperator(system)
    started = time.perf_counter()
    if mode == SolveMode.FAST:
        state = HistoryState.zeros(kernel.nodes, system.M)
        factors: dict[int, ModeFactors] = {}

        def factors_of(k: int) -> ModeFactors:
            if k not in factors:
                factors[k] = mode_factors(kernel.nodes, mesh.step(k), p)
            return factors[k]

    else:
        far_field = dg_core.FarField(mesh, alpha, p, system.M)

    for n in range(1, mesh.N + 1):
        previous = mesh.step(n - 1) if n > 1 else None
        blocks = dg_core.local_frac_block(alpha, p, mesh.step(n), previous)
        if n >= 3:
            if mode == SolveMode.FAST:
                history_update(
                    state, trace.block(n - 2), kernel.nodes, mesh.step(n - 2), factors_of(n - 2)
                )
                history = dg_core.history_fast(
                    n, trace, state, kernel, alpha, blocks, factors_of(n), factors_of(n - 1)
                )
                del factors[n - 2]
            else:
                far_field.ingest(trace.block(n - 2))
                history = dg_core.history_direct(n, trace, alpha, far_field, blocks)
        else:
            history = dg_core.history_direct(n, trace, alpha, blocks=blocks)
        trace.append(_step(n, system, operator, mesh, alpha, p, history, blocks))
        if on_step is not None:
            on_step(n)

    logger.info(
        "Solved %s (%s, N=%d, r=%g, p=%d, alpha=%g) in %.1f ms.",
        system.name,
        mode,
        mesh.N,
        mesh.r,
        p,
        alpha,
        1000 * (time.perf_counter() - started),
    )
    return trace

