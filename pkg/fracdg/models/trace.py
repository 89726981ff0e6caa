"""Piecewise polynomial traces and compressed history state."""

from __future__ import annotations

import numpy as np
from attrs import define, field

from fracdg.exceptions import InvalidInputError
from fracdg.models.mesh import GradedMesh


@define
class PolyTrace:
    """Piecewise polynomial-in-time solution on a graded mesh.

    On interval I_n the trace is ``sum_k blocks[n-1, k] * ((t - t_{n-1}) / tau_n)**k``
    with each coefficient a vector of M spatial degrees of freedom. The trace
    is discontinuous at mesh points and evaluation at ``t`` in ``(t_{n-1}, t_n]``
    only uses block n.

    Attributes:
        mesh: The temporal mesh.
        p: Polynomial degree in time.
        M: Number of spatial degrees of freedom.
        u0: Initial data in degree-of-freedom coordinates.
        blocks: Coefficient array of shape (N, p + 1, M).
        solved: Number of intervals with a coefficient block.
    """

    mesh: GradedMesh
    p: int
    M: int
    u0: np.ndarray = field(converter=lambda v: np.atleast_1d(np.asarray(v, float)))
    blocks: np.ndarray = field(init=False, repr=False)
    solved: int = field(init=False, default=0)

    def __attrs_post_init__(self) -> None:
        """Allocate storage for all coefficient blocks."""
        if self.p < 0:
            raise InvalidInputError(self.p, "Polynomial degree must be nonnegative.")
        if self.u0.shape != (self.M,):
            raise InvalidInputError(
                self.u0.shape, f"Initial data must have shape ({self.M},)."
            )
        self.blocks = np.zeros((self.mesh.N, self.p + 1, self.M))

    @classmethod
    def from_blocks(
        cls, mesh: GradedMesh, blocks: np.ndarray, u0: np.ndarray | None = None
    ) -> PolyTrace:
        """Build a fully solved trace from a (N, p + 1, M) coefficient array."""
        blocks = np.asarray(blocks, dtype=float)
        if blocks.ndim != 3 or blocks.shape[0] != mesh.N:
            raise InvalidInputError(
                blocks.shape, f"Expected a coefficient array of shape ({mesh.N}, p + 1, M)."
            )
        _, width, dofs = blocks.shape
        trace = cls(mesh, width - 1, dofs, np.zeros(dofs) if u0 is None else u0)
        trace.blocks[:] = blocks
        trace.solved = mesh.N
        return trace

    @property
    def complete(self) -> bool:
        """Whether every interval has been solved."""
        return self.solved == self.mesh.N

    def block(self, n: int) -> np.ndarray:
        """Return the (p + 1, M) coefficient block of interval I_n (1-based)."""
        if not 1 <= n <= self.solved:
            raise InvalidInputError(n, f"Interval index must be in 1..{self.solved}.")
        return self.blocks[n - 1]

    def append(self, block: np.ndarray) -> None:
        """Store the coefficient block of the next interval."""
        if self.solved >= self.mesh.N:
            raise InvalidInputError(self.solved, "Trace already covers the mesh.")
        self.blocks[self.solved] = block
        self.solved += 1

    def left_limit(self, n: int) -> np.ndarray:
        """Return U(t_n^-), the value at the right end of I_n."""
        return self.block(n).sum(axis=0)

    def right_limit(self, n: int) -> np.ndarray:
        """Return U(t_n^+), the value at the left end of I_{n+1}."""
        return self.block(n + 1)[0].copy()

    def left_limits(self) -> np.ndarray:
        """Return the (solved, M) array of left limits U(t_n^-)."""
        return self.blocks[: self.solved].sum(axis=1)

    def evaluate(self, t: float | np.ndarray) -> np.ndarray:
        """Evaluate the trace at times in [0, t_solved].

        Times equal to a mesh point t_n take the left limit; t = 0 takes the
        right limit of the first interval.

        Returns:
            Array of shape (len(t), M).
        """
        times = np.atleast_1d(np.asarray(t, dtype=float))
        points = self.mesh.points
        if np.any(times < 0) or np.any(times > points[self.solved] * (1 + 1e-14)):
            raise InvalidInputError(t, "Time lies outside the solved range.")
        index = np.clip(np.searchsorted(points, times, side="left"), 1, self.solved)
        y = (times - points[index - 1]) / self.mesh.tau[index - 1]
        powers = y[:, None] ** np.arange(self.p + 1)[None, :]
        return np.einsum("ik,ikm->im", powers, self.blocks[index - 1])


@define
class HistoryState:
    """Per-mode accumulators of the compressed history integral.

    ``modes[j]`` holds ``Y_j(t) = int_0^t exp(-lambda_j (t - s)) U(s) ds`` at
    ``t = last_time``. For shifted kernels ``moments[k, j]`` holds the same
    integral with an extra ``s**k`` weight.

    Attributes:
        nodes: The exponents lambda_j the state was built for.
        modes: Array of shape (Q, M).
        moments: Optional array of shape (q + 1, Q, M).
        last_index: Number of intervals ingested so far.
        last_time: Time at which the accumulators are valid.
    """

    nodes: np.ndarray = field(repr=False)
    modes: np.ndarray = field(repr=False)
    moments: np.ndarray | None = field(default=None, repr=False)
    last_index: int = 0
    last_time: float = 0.0

    @classmethod
    def zeros(cls, nodes: np.ndarray, M: int, q: int | None = None) -> HistoryState:  # noqa: N803
        """Create an empty state, with moment accumulators when q is given."""
        nodes = np.asarray(nodes, dtype=float)
        moments = None if q is None else np.zeros((q + 1, nodes.size, M))
        return cls(nodes, np.zeros((nodes.size, M)), moments)

    @property
    def Q(self) -> int:  # noqa: N802
        """Number of modes."""
        return int(self.nodes.size)
