"""Local matrices and history terms of the time-stepping DG scheme.

On each interval I_n the solution is ``U = sum_b c_b chi_b`` with the shifted
monomials ``chi_b(t) = ((t - t_{n-1}) / tau_n)^b``. Testing the
Riemann-Liouville derivative of the whole trace against ``chi_a`` on I_n
splits into a local part ``sum_b B[a, b] c_b`` and a history part ``H[a]``
that only depends on earlier intervals. The previous interval is handled
exactly through the companion matrix C; older intervals through either a
Gauss tensor rule with near and far tiers or a sum-of-exponentials kernel.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np
from attrs import frozen
from scipy import special

from fracdg.domain.frac_calc import phi_all, power_moments
from fracdg.domain.quadrature import gauss_legendre, geometric_edges, panel_rule, uniform_edges
from fracdg.exceptions import ConfigurationError, InvalidInputError

if TYPE_CHECKING:
    from fracdg.domain.frac_calc import ModeFactors
    from fracdg.models.kernel import SOEKernel
    from fracdg.models.mesh import GradedMesh
    from fracdg.models.system import SpatialSystem
    from fracdg.models.trace import HistoryState, PolyTrace

NEAR_POINTS = 10
FAR_POINTS = 5
FAR_SEPARATION = 8.0
"""Sources ending at least this many previous steps before t_{n-1} use the far rule."""

LOAD_ORDER = 16
FIRST_INTERVAL_LEVELS = 8
MAX_LOAD_PANELS = 64


@frozen
class LocalBlocks:
    """Per-interval coupling matrices, each of shape (p + 1, p + 1).

    Attributes:
        B: Local fractional block, ``int_{I_n} chi_a D^alpha chi_b``.
        G: Temporal mass block, ``int_{I_n} chi_a chi_b``.
        C: Coupling to the coefficients of I_{n-1}; None on the first interval.
    """

    B: np.ndarray
    G: np.ndarray
    C: np.ndarray | None = None


def _fractional_block(alpha: float, p: int, tau: float) -> np.ndarray:
    a = np.arange(p + 1)[:, None]
    b = np.arange(p + 1)[None, :]
    return (
        special.factorial(b)
        * tau ** (1 - alpha)
        * special.rgamma(b + 1 - alpha)
        / (a + b + 1 - alpha)
    )


def _mass_block(p: int, tau: float) -> np.ndarray:
    a = np.arange(p + 1)
    return tau / (a[:, None] + a[None, :] + 1.0)


def _companion_block(alpha: float, p: int, tau: float, tau_prev: float) -> np.ndarray:
    """Exact coupling of the previous interval's monomials to I_n.

    Column b holds ``int_{I_n} chi_a(t) int_{I_{n-1}} omega_{-alpha}(t - s) chi'_b(s) ds dt``
    after one integration by parts in s, which leaves only weakly singular
    kernels.
    """
    gamma = 1 - alpha
    moments: dict[tuple[float, float], np.ndarray] = {}

    def pm(mu: float, d: float) -> np.ndarray:
        if (mu, d) not in moments:
            moments[mu, d] = power_moments(p, mu, d, tau)
        return moments[mu, d]

    C = np.empty((p + 1, p + 1))  # noqa: N806
    for b in range(p + 1):
        column = -pm(gamma, 0.0)
        if b == 0:
            column = column + pm(gamma, tau_prev)
        else:
            inner = pm(gamma + b, tau_prev).copy()
            for i in range(b):
                inner -= (
                    tau_prev ** (b - 1 - i)
                    / math.factorial(b - 1 - i)
                    * pm(gamma + i + 1, 0.0)
                )
            column = column + math.factorial(b) / tau_prev**b * inner
        C[:, b] = column
    return C


def local_frac_block(
    alpha: float, p: int, tau: float, tau_prev: float | None = None
) -> LocalBlocks:
    """Build the local matrices of one interval.

    B only depends on tau_n, never on the position of I_n, so direct and fast
    solves share it.

    Args:
        alpha: Fractional order in (0, 1).
        p: Polynomial degree.
        tau: Length of I_n.
        tau_prev: Length of I_{n-1}, None on the first interval.

    Raises:
        InvalidInputError: If alpha is outside (0, 1) or a length is not positive.
    """
    if not 0 < alpha < 1:
        raise InvalidInputError(alpha, "Fractional order alpha must lie in (0, 1).")
    if not tau > 0 or (tau_prev is not None and not tau_prev > 0):
        raise InvalidInputError((tau, tau_prev), "Interval lengths must be positive.")
    C = None if tau_prev is None else _companion_block(alpha, p, tau, tau_prev)  # noqa: N806
    return LocalBlocks(B=_fractional_block(alpha, p, tau), G=_mass_block(p, tau), C=C)


def _monomials(y: np.ndarray, p: int) -> np.ndarray:
    """Return the (len(y), p + 1) matrix of y**a."""
    return y[:, None] ** np.arange(p + 1)[None, :]


class FarField:
    """Gauss tensor-rule history of the intervals before I_{n-1}.

    Every ingested interval is stored as Gauss nodes together with the
    weighted values ``tau_k w_i U(s_i)`` at two resolutions. A source interval
    whose right end lies at least ``FAR_SEPARATION`` steps of length
    tau_{n-1} before t_{n-1} uses the coarse rule, the rest the fine one. The
    target interval is split into panels no longer than tau_{n-1}.
    """

    def __init__(self, mesh: GradedMesh, alpha: float, p: int, M: int) -> None:  # noqa: N803
        """Preallocate storage for every interval of the mesh.

        Args:
            mesh: The temporal mesh.
            alpha: Fractional order in (0, 1).
            p: Polynomial degree of the ingested blocks.
            M: Number of spatial degrees of freedom.
        """
        self.mesh = mesh
        self.alpha = alpha
        self.p = p
        self.M = M
        self.ingested = 0
        self._scale = float(special.rgamma(-alpha))
        self._nodes: dict[int, np.ndarray] = {}
        self._values: dict[int, np.ndarray] = {}
        for order in (NEAR_POINTS, FAR_POINTS):
            self._nodes[order] = np.empty((mesh.N, order))
            self._values[order] = np.empty((mesh.N, order, M))

    def ingest(self, block: np.ndarray) -> None:
        """Store the coefficient block of the next interval."""
        k = self.ingested + 1
        if k > self.mesh.N:
            raise InvalidInputError(k, "Every interval has already been ingested.")
        start = float(self.mesh.points[k - 1])
        tau = self.mesh.step(k)
        for order, nodes in self._nodes.items():
            x, w = gauss_legendre(order)
            nodes[k - 1] = start + tau * x
            self._values[order][k - 1] = (tau * w)[:, None] * (_monomials(x, self.p) @ block)
        self.ingested = k

    def _kernel(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self._scale * np.power(t[:, None] - s[None, :], -1.0 - self.alpha)

    def _tier(self, n: int, order: int, sources: slice) -> np.ndarray:
        start, end = self.mesh.interval(n)
        panels = max(1, math.ceil(self.mesh.step(n) / self.mesh.step(n - 1)))
        t, w = panel_rule(uniform_edges(start, end, panels), order)
        s = self._nodes[order][sources].ravel()
        values = self._values[order][sources].reshape(-1, self.M)
        test = w[:, None] * _monomials((t - start) / self.mesh.step(n), self.p)
        return test.T @ (self._kernel(t, s) @ values)

    def contribution(self, n: int) -> np.ndarray:
        """History of intervals I_1..I_{n-2} tested against I_n.

        Returns:
            Array of shape (p + 1, M).

        Raises:
            InvalidInputError: If those intervals have not all been ingested.
        """
        out = np.zeros((self.p + 1, self.M))
        if n < 3:
            return out
        if self.ingested < n - 2:
            raise InvalidInputError(
                n, f"Far field holds {self.ingested} intervals, needs {n - 2}."
            )
        points = self.mesh.points
        cutoff = points[n - 1] - FAR_SEPARATION * self.mesh.step(n - 1)
        far = int(np.searchsorted(points[1 : n - 1], cutoff, side="right"))
        if far:
            out += self._tier(n, FAR_POINTS, slice(0, far))
        if far < n - 2:
            out += self._tier(n, NEAR_POINTS, slice(far, n - 2))
        return out


def _companion(
    n: int, trace: PolyTrace, alpha: float, blocks: LocalBlocks | None
) -> np.ndarray:
    if blocks is None or blocks.C is None:
        mesh = trace.mesh
        blocks = local_frac_block(alpha, trace.p, mesh.step(n), mesh.step(n - 1))
    return blocks.C


def history_direct(
    n: int,
    trace: PolyTrace,
    alpha: float,
    far_field: FarField | None = None,
    blocks: LocalBlocks | None = None,
) -> np.ndarray:
    """Full history term H for interval I_n from blocks 1..n-1.

    Args:
        n: Index of the interval being solved.
        trace: Trace holding at least n - 1 solved blocks.
        alpha: Fractional order.
        far_field: Cache already holding blocks 1..n-2; built when None.
        blocks: Local matrices of I_n including C; built when None.

    Returns:
        Array of shape (p + 1, M).
    """
    mesh = trace.mesh
    if n == 1:
        return np.zeros((trace.p + 1, trace.M))
    history = _companion(n, trace, alpha, blocks) @ trace.block(n - 1)
    if n >= 3:
        if far_field is None:
            far_field = FarField(mesh, alpha, trace.p, trace.M)
            for k in range(1, n - 1):
                far_field.ingest(trace.block(k))
        history = history + far_field.contribution(n)
    return history


def psi_lagrange(p: int, tau: float, nodes: np.ndarray) -> np.ndarray:
    """Exponential moments of the end-point Lagrange-type basis on [0, tau].

    For p = 1 the basis is ``[tau - x, x]`` and for p = 2
    ``[(tau - x)^2, x (tau - x), x^2]``; row a holds
    ``int_0^tau basis_a(x) exp(-lambda_j x) dx`` for every node.

    Returns:
        Array of shape (p + 1, Q).
    """
    z = -np.asarray(nodes, dtype=float) * tau
    ph = phi_all(p, z)
    if p == 1:
        return tau**2 * np.stack((ph[0] - ph[1], ph[1]))
    if p == 2:
        return tau**3 * np.stack((ph[0] - 2 * ph[1] + ph[2], ph[1] - ph[2], ph[2]))
    raise InvalidInputError(p, "Lagrange-type moments are defined for p = 1, 2.")


_LAGRANGE_TO_MONOMIAL = {
    1: np.array([[1.0, 1.0], [0.0, 1.0]]),
    2: np.array([[1.0, 2.0, 1.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]]),
}


def psi_vector(p: int, tau: float, nodes: np.ndarray) -> np.ndarray:
    """Exponential moments ``int_0^tau (x/tau)^a exp(-lambda_j x) dx``.

    Equal to ``tau phi_a(-lambda_j tau)``.

    Returns:
        Array of shape (p + 1, Q).
    """
    if p in _LAGRANGE_TO_MONOMIAL:
        return _LAGRANGE_TO_MONOMIAL[p] @ psi_lagrange(p, tau, nodes) / tau**p
    return tau * phi_all(p, -np.asarray(nodes, dtype=float) * tau)


def check_fast_kernel(kernel: SOEKernel, mesh: GradedMesh, alpha: float) -> None:
    """Check that a kernel approximates omega_{-alpha} on every history gap.

    Raises:
        ConfigurationError: If the kernel is shifted, has the wrong exponent
            or its window misses part of the gaps.
    """
    if kernel.q != 0 or not math.isclose(kernel.beta, -alpha, rel_tol=1e-12):
        raise ConfigurationError(
            f"History kernel must approximate omega_beta with beta = {-alpha:g} "
            f"and no shift, got beta = {kernel.beta:g}, q = {kernel.q}."
        )
    if mesh.N < 3:
        return
    shortest_gap = float(mesh.tau[1:].min())
    if kernel.delta > shortest_gap * (1 + 1e-12) or kernel.horizon < mesh.T * (1 - 1e-12):
        raise ConfigurationError(
            f"Kernel window [{kernel.delta:.3e}, {kernel.horizon:.3e}] does not "
            f"cover the history gaps [{shortest_gap:.3e}, {mesh.T:g}]."
        )


def history_fast(
    n: int,
    trace: PolyTrace,
    state: HistoryState,
    kernel: SOEKernel,
    alpha: float,
    blocks: LocalBlocks | None = None,
    factors: ModeFactors | None = None,
    previous: ModeFactors | None = None,
) -> np.ndarray:
    """History term H for I_n with the compressed far history.

    ``H = C c_{n-1} + sum_j w_j exp(-lambda_j tau_{n-1}) psi(lambda_j) Y_j(t_{n-2})``.
    The state must already hold blocks 1..n-2. ``blocks`` are the local
    matrices of I_n; ``factors`` and ``previous`` the kernel's mode factors
    over I_n and I_{n-1}. Each is computed when missing.

    Returns:
        Array of shape (p + 1, M).
    """
    mesh = trace.mesh
    if n == 1:
        return np.zeros((trace.p + 1, trace.M))
    history = _companion(n, trace, alpha, blocks) @ trace.block(n - 1)
    if n >= 3:
        if state.last_index != n - 2:
            raise ConfigurationError(
                f"History state holds {state.last_index} intervals, needs {n - 2}."
            )
        if factors is None:
            psi = psi_vector(trace.p, mesh.step(n), kernel.nodes)
        else:
            psi = factors.psi[: trace.p + 1]
        if previous is None:
            decay = np.exp(-kernel.nodes * mesh.step(n - 1))
        else:
            decay = previous.decay
        scaled = kernel.weights * decay
        history = history + (psi * scaled) @ state.modes
    return history


def rhs_assemble(
    n: int, system: SpatialSystem, mesh: GradedMesh, alpha: float, p: int
) -> np.ndarray:
    """Right-hand side ``int_{I_n} chi_a (f + omega_{1-alpha} u0)`` in dual coordinates.

    The load is integrated by composite Gauss rules: geometrically refined
    toward t = 0 on the first interval, uniform panels no longer than
    t_{n-1} afterwards. The initial-data term is exact.

    Returns:
        Array of shape (p + 1, M).
    """
    start, end = mesh.interval(n)
    tau = end - start
    if n == 1:
        edges = geometric_edges(start, end, FIRST_INTERVAL_LEVELS, 0.25)
    else:
        panels = min(math.ceil(tau / start), MAX_LOAD_PANELS)
        edges = uniform_edges(start, end, panels)
    t, w = panel_rule(edges, LOAD_ORDER)
    loads = np.asarray(system.load(t), dtype=float).reshape(t.size, -1)
    test = w[:, None] * _monomials((t - start) / tau, p)
    rhs = test.T @ loads

    initial = system.mass @ system.u0
    rhs += np.outer(power_moments(p, 1 - alpha, start, tau), initial)
    return rhs


def bilinear_form_A(  # noqa: N802
    v: PolyTrace,
    w: PolyTrace,
    alpha: float,
    mesh: GradedMesh,
    n: int,
    mass: np.ndarray | None = None,
) -> float:
    """Evaluate ``int_0^{t_n} <D^alpha v, w> dt`` for two traces on the same mesh.

    Args:
        v: Trace the Riemann-Liouville derivative acts on.
        w: Test trace.
        alpha: Fractional order.
        mesh: The common mesh.
        n: Number of leading intervals to include.
        mass: Spatial inner product; the identity when None.

    Returns:
        The value of the form, nonnegative when v equals w.
    """
    if v.mesh != mesh or w.mesh != mesh:
        raise InvalidInputError(v.mesh, "Traces must live on the given mesh.")
    if v.p != w.p or v.M != w.M:
        raise InvalidInputError((v.p, w.p), "Traces must share degree and size.")
    total = 0.0
    far_field = FarField(mesh, alpha, v.p, v.M)
    for m in range(1, n + 1):
        if m >= 3:
            far_field.ingest(v.block(m - 2))
        previous = mesh.step(m - 1) if m > 1 else None
        blocks = local_frac_block(alpha, v.p, mesh.step(m), previous)
        applied = blocks.B @ v.block(m) + history_direct(m, v, alpha, far_field, blocks)
        tested = w.block(m) if mass is None else (mass @ w.block(m).T).T
        total += float(np.sum(applied * tested))
    return total
