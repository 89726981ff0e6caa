"""Fractional-calculus primitives.

Power kernels ``omega_beta(t) = t^(beta-1) / Gamma(beta)``, the moments
``phi_k(z) = int_0^1 s^k e^(zs) ds``, closed-form convolutions of power
kernels with interval polynomials, the exact per-mode history recursion and
the standalone fast Riemann-Liouville integral operators built on it.
"""

from __future__ import annotations

import functools
import math
from typing import TYPE_CHECKING

import numpy as np
from attrs import frozen
from scipy import special

from fracdg.domain.quadrature import gauss_legendre
from fracdg.exceptions import ConfigurationError, InvalidInputError
from fracdg.models.trace import HistoryState

if TYPE_CHECKING:
    from fracdg.models.kernel import SOEKernel
    from fracdg.models.mesh import GradedMesh
    from fracdg.models.trace import PolyTrace

_FAR_RATIO = 1.0
"""Closed forms are used while the evaluation gap is at most this many interval widths."""

_GAUSS_ORDER = 16

_SERIES_TOL = 1e-20
"""Truncation bound on ``r^m / m!`` for series arguments of modulus at most r."""


def _series_radius(k: int) -> float:
    """phi_k switches to its Taylor series for ``|z|`` below this radius."""
    return max(0.5, float(k))


def _is_pole(beta: float) -> bool:
    return beta <= 0 and float(beta).is_integer()


def _omega(beta: float, t: np.ndarray | float) -> np.ndarray:
    """omega_beta without argument checks; t must be positive."""
    return np.power(t, beta - 1.0) * special.rgamma(beta)


def omega(beta: float, t: float | np.ndarray) -> float | np.ndarray:
    """Evaluate the power kernel omega_beta(t) = t^(beta-1) / Gamma(beta).

    Raises:
        InvalidInputError: If beta is a nonpositive integer or any t <= 0.
    """
    if _is_pole(beta):
        raise InvalidInputError(beta, "omega is undefined at nonpositive integer beta.")
    times = np.asarray(t, dtype=float)
    if np.any(times <= 0):
        raise InvalidInputError(t, "omega needs positive arguments.")
    value = _omega(beta, times)
    return float(value) if value.ndim == 0 else value


# Exponential moments


@functools.cache
def _series_coefficients(k: int) -> np.ndarray:
    """Coefficients ``1 / (m! (k + m + 1))`` of the Taylor series of phi_k."""
    radius = _series_radius(k)
    terms = 1
    magnitude = 1.0
    while magnitude > _SERIES_TOL:
        magnitude *= radius / terms
        terms += 1
    orders = np.arange(terms)
    return special.rgamma(orders + 1.0) / (k + orders + 1)


def _phi_series(k: int, z: np.ndarray) -> np.ndarray:
    """sum_m z^m / (m! (k + m + 1)) for ``|z|`` within the series radius."""
    coefficients = _series_coefficients(k)
    return np.power.outer(z, np.arange(coefficients.size)) @ coefficients


def phi_all(p: int, z: float | np.ndarray) -> np.ndarray:
    """Evaluate phi_0..phi_p at every z.

    Small arguments, ``|z| < max(1/2, k)``, use the Taylor series of phi_k;
    the rest use the upward recurrence ``z phi_k = e^z - k phi_{k-1}``
    started from ``phi_0 = (e^z - 1) / z``.

    Returns:
        Array of shape (p + 1, *z.shape).
    """
    z = np.asarray(z, dtype=float)
    flat = z.ravel()
    out = np.empty((p + 1, flat.size))

    safe = np.where(flat == 0.0, 1.0, flat)
    with np.errstate(over="ignore", invalid="ignore"):
        exp_z = np.exp(flat)
        current = np.expm1(flat) / safe
        for k in range(p + 1):
            if k > 0:
                current = (exp_z - k * current) / safe
            small = np.abs(flat) < _series_radius(k)
            if np.any(small):
                current[small] = _phi_series(k, flat[small])
            # keep the recurrence fed with accurate values
            out[k] = current
    return out.reshape((p + 1, *z.shape))


def phi(k: int, z: float | np.ndarray) -> float | np.ndarray:
    """Evaluate phi_k(z) = int_0^1 s^k e^(z s) ds."""
    if k < 0:
        raise InvalidInputError(k, "phi needs a nonnegative order.")
    value = phi_all(k, z)[k]
    return float(value) if value.ndim == 0 else value


@functools.cache
def _alternating_binomials(degree: int) -> np.ndarray:
    """Lower triangular ``S[b, i] = C(b, i) (-1)^i`` for b, i = 0..degree."""
    out = np.zeros((degree + 1, degree + 1))
    for b in range(degree + 1):
        for i in range(b + 1):
            out[b, i] = math.comb(b, i) * (-1) ** i
    return out


def _moment_weights(moments: np.ndarray, tau: float) -> np.ndarray:
    """exp_moment_weights from precomputed phi_0..phi_degree at -lambda tau."""
    return tau * (_alternating_binomials(moments.shape[0] - 1) @ moments).T


def exp_moment_weights(nodes: np.ndarray, tau: float, degree: int) -> np.ndarray:
    """Integrals of decaying exponentials against interval monomials.

    ``E[j, b] = int_{t_{k-1}}^{t_k} exp(-lambda_j (t_k - s)) ((s - t_{k-1}) / tau)^b ds``
    ``= tau * sum_i C(b, i) (-1)^i phi_i(-lambda_j tau)``; every phi argument is
    nonpositive.

    Returns:
        Array of shape (Q, degree + 1).
    """
    return _moment_weights(phi_all(degree, -np.asarray(nodes, dtype=float) * tau), tau)


@frozen(eq=False)
class ModeFactors:
    """Exponential factors of a set of SOE nodes over one interval.

    One interval's factors serve three consecutive fast steps: its psi vector
    in the step on the interval itself, its decay in the next history sum and
    its decay and moment weights when the state is advanced across it.

    Attributes:
        tau: Interval length.
        decay: ``exp(-lambda_j tau)``, shape (Q,).
        phi: ``phi_0..phi_p`` at ``-lambda_j tau``, shape (p + 1, Q).
    """

    tau: float
    decay: np.ndarray
    phi: np.ndarray

    @property
    def p(self) -> int:
        """Highest phi order available."""
        return self.phi.shape[0] - 1

    @property
    def psi(self) -> np.ndarray:
        """``int_0^tau (x/tau)^a exp(-lambda_j x) dx``, shape (p + 1, Q)."""
        return self.tau * self.phi

    @property
    def weights(self) -> np.ndarray:
        """exp_moment_weights of degree p, shape (Q, p + 1)."""
        return _moment_weights(self.phi, self.tau)


def mode_factors(nodes: np.ndarray, tau: float, p: int) -> ModeFactors:
    """Evaluate the exponential factors of ``nodes`` over an interval of length tau."""
    scaled = -np.asarray(nodes, dtype=float) * tau
    return ModeFactors(tau=tau, decay=np.exp(scaled), phi=phi_all(p, scaled))


# Convolutions with interval polynomials


def conv_poly_power(gamma: float, a: float, b: float, m: int, t: float) -> float:
    """Evaluate int_a^b omega_gamma(t - s) (s - a)^m ds for t >= b.

    Uses ``m! [omega_{gamma+m+1}(t-a) - sum_i (b-a)^(m-i)/(m-i)! omega_{gamma+i+1}(t-b)]``
    with the left limit at t = b. When t is more than one interval width
    beyond b, where that difference cancels, the smooth integrand is
    integrated by 16-point Gauss-Legendre instead.

    Raises:
        InvalidInputError: If gamma <= 0, m < 0 or the points are out of order.
    """
    if not gamma > 0:
        raise InvalidInputError(gamma, "conv_poly_power needs gamma > 0.")
    if m < 0:
        raise InvalidInputError(m, "Polynomial degree must be nonnegative.")
    if not a < b <= t:
        raise InvalidInputError((a, b, t), "Expected a < b <= t.")

    width = b - a
    if t - b > _FAR_RATIO * width:
        x, w = gauss_legendre(_GAUSS_ORDER)
        s = a + width * x
        return float(width * np.sum(w * _omega(gamma, t - s) * (s - a) ** m))

    total = float(_omega(gamma + m + 1, t - a))
    if t > b:
        for i in range(m + 1):
            total -= (
                width ** (m - i)
                / math.factorial(m - i)
                * float(_omega(gamma + i + 1, t - b))
            )
    return math.factorial(m) * total


def power_moments(p: int, mu: float, d: float, tau: float) -> np.ndarray:
    """Evaluate int_0^tau (x/tau)^a omega_mu(x + d) dx for a = 0..p.

    Integration by parts gives
    ``sum_i (-1)^i a!/(a-i)! tau^(a-i) omega_{mu+1+i}(tau+d) - (-1)^a a! omega_{mu+1+a}(d)``
    divided by tau^a, used while d <= tau. Larger offsets use Gauss-Legendre.

    Raises:
        InvalidInputError: If d < 0, or d == 0 with a nonintegrable kernel.
    """
    if d < 0 or (d == 0 and not mu > 0):
        raise InvalidInputError((mu, d), "Kernel is not integrable on the interval.")

    if d > _FAR_RATIO * tau:
        x, w = gauss_legendre(_GAUSS_ORDER)
        values = w * _omega(mu, tau * x + d)
        powers = x[None, :] ** np.arange(p + 1)[:, None]
        return tau * (powers @ values)

    out = np.empty(p + 1)
    for a in range(p + 1):
        total = 0.0
        for i in range(a + 1):
            total += (
                (-1) ** i
                * math.factorial(a)
                / math.factorial(a - i)
                * tau ** (a - i)
                * float(_omega(mu + 1 + i, tau + d))
            )
        if d > 0:
            total -= (-1) ** a * math.factorial(a) * float(_omega(mu + 1 + a, d))
        out[a] = total / tau**a
    return out


def power_moment(a: int, mu: float, d: float, tau: float) -> float:
    """Evaluate int_0^tau (x/tau)^a omega_mu(x + d) dx for a single a."""
    return float(power_moments(a, mu, d, tau)[a])


def local_part_linear(
    beta: float, tau_n: float, U_plus: np.ndarray, U_minus: np.ndarray  # noqa: N803
) -> np.ndarray:
    """Local RL integral of a linear piece over its own interval.

    For U linear on I_n with end values U_+^{n-1} and U_-^n, returns
    ``int_{I_n} omega_beta(t_n - s) U(s) ds``.

    Raises:
        InvalidInputError: If beta is outside (0, 1).
    """
    if not 0 < beta < 1:
        raise InvalidInputError(beta, "beta must lie in (0, 1).")
    scale = tau_n**beta * special.rgamma(2 + beta)
    return beta * scale * np.asarray(U_plus) + scale * np.asarray(U_minus)


# History recursion


def _shifted_power_product(
    block: np.ndarray, start: float, tau: float, k: int
) -> np.ndarray:
    """Coefficients in y = (s - start)/tau of s^k U(s) for a block of U."""
    p = block.shape[0] - 1
    power = np.array(
        [math.comb(k, i) * start ** (k - i) * tau**i for i in range(k + 1)]
    )
    out = np.zeros((p + k + 1, block.shape[1]))
    for i, c in enumerate(power):
        out[i : i + p + 1] += c * block
    return out


def history_update(
    state: HistoryState,
    block: np.ndarray,
    nodes: np.ndarray,
    tau: float,
    factors: ModeFactors | None = None,
) -> HistoryState:
    """Advance the per-mode accumulators across one interval.

    Applies ``Y_j <- exp(-lambda_j tau) Y_j + int exp(-lambda_j (t_k - s)) U(s) ds``
    exactly for the polynomial piece ``block`` on the next interval, and the
    same with an extra ``s**k`` weight for the moment accumulators. The state
    is updated in place and returned. ``factors`` of the interval, when given,
    supply the decay and the weights of degree p.

    Raises:
        ConfigurationError: If the state was built for a different set of nodes.
    """
    nodes = np.asarray(nodes, dtype=float)
    if nodes.shape != state.nodes.shape:
        raise ConfigurationError(
            f"History state has {state.Q} modes but {nodes.size} nodes were given."
        )
    block = np.asarray(block, dtype=float)
    p = block.shape[0] - 1
    if factors is not None and factors.p >= p:
        decay = factors.decay[:, None]
        weights = _moment_weights(factors.phi[: p + 1], tau)
    else:
        decay = np.exp(-nodes * tau)[:, None]
        weights = exp_moment_weights(nodes, tau, p)

    state.modes = decay * state.modes + weights @ block
    if state.moments is not None:
        for k in range(state.moments.shape[0]):
            product = _shifted_power_product(block, state.last_time, tau, k)
            weights = exp_moment_weights(nodes, tau, p + k)
            state.moments[k] = decay * state.moments[k] + weights @ product
    state.last_time += tau
    state.last_index += 1
    return state


# Standalone Riemann-Liouville integrals


def _local_rl(beta: float, block: np.ndarray, tau: float) -> np.ndarray:
    """int_{I_n} omega_beta(t_n - s) U(s) ds for one block, t_n the right end."""
    orders = np.arange(block.shape[0])
    factorials = special.factorial(orders)
    coefficients = factorials * np.power(tau, beta + orders) * special.rgamma(
        beta + orders + 1
    )
    # conv_poly_power at t = b reduces to m! omega_{beta+m+1}(tau), scaled by tau^-m
    return (coefficients / tau**orders) @ block


def rl_integral_direct(trace: PolyTrace, beta: float) -> np.ndarray:
    """Full-history RL integral of order beta at every mesh point.

    Sums ``int_{I_k} omega_beta(t_n - s) U(s) ds`` over k <= n with
    conv_poly_power; O(N^2) work.

    Returns:
        Array of shape (N, M) with the values at t_1..t_N.
    """
    if not beta > 0:
        raise InvalidInputError(beta, "RL integrals need a positive order.")
    mesh = trace.mesh
    points = mesh.points
    out = np.zeros((mesh.N, trace.M))
    for n in range(1, mesh.N + 1):
        t = float(points[n])
        for k in range(1, n + 1):
            a, b = float(points[k - 1]), float(points[k])
            tau = b - a
            weights = np.array(
                [conv_poly_power(beta, a, b, m, t) / tau**m for m in range(trace.p + 1)]
            )
            out[n - 1] += weights @ trace.block(k)
    return out


def _check_window(kernel: SOEKernel, mesh: GradedMesh) -> None:
    if kernel.delta > mesh.tau_min * (1 + 1e-12):
        raise ConfigurationError(
            f"Kernel window starts at {kernel.delta:.3e}, after the shortest "
            f"history gap {mesh.tau_min:.3e}."
        )
    if kernel.horizon < mesh.T * (1 - 1e-12):
        raise ConfigurationError(
            f"Kernel window ends at {kernel.horizon:.3e}, before T = {mesh.T:g}."
        )


def alg1_fast_op(trace: PolyTrace, kernel: SOEKernel, mesh: GradedMesh) -> np.ndarray:
    """Fast RL integral of order kernel.beta with an unshifted kernel.

    Each value is the exact local part over I_n plus the compressed history
    ``sum_j w_j exp(-lambda_j tau_n) Y_j(t_{n-1})``.

    Returns:
        Array of shape (N, M) with the values at t_1..t_N.

    Raises:
        ConfigurationError: If the kernel is shifted or its window does not
            cover the mesh.
    """
    if kernel.q != 0:
        raise ConfigurationError("Unshifted evaluation needs a kernel with q = 0.")
    if not 0 < kernel.beta < 1:
        raise ConfigurationError("Unshifted evaluation needs 0 < beta < 1.")
    _check_window(kernel, mesh)

    state = HistoryState.zeros(kernel.nodes, trace.M)
    out = np.empty((mesh.N, trace.M))
    for n in range(1, mesh.N + 1):
        tau = mesh.step(n)
        block = trace.block(n)
        history = (kernel.weights * np.exp(-kernel.nodes * tau)) @ state.modes
        out[n - 1] = _local_rl(kernel.beta, block, tau) + history
        history_update(state, block, kernel.nodes, tau)
    return out


def alg2_fast_op(trace: PolyTrace, kernel: SOEKernel, mesh: GradedMesh) -> np.ndarray:
    """Fast RL integral of order kernel.beta with a shifted kernel.

    The history uses ``(t_n - s)^q = sum_k C(q, k) t_n^(q-k) (-s)^k`` and the
    moment accumulators ``Y_j^(k)``.

    Returns:
        Array of shape (N, M) with the values at t_1..t_N.
    """
    if not kernel.beta > 0:
        raise ConfigurationError("RL integrals need a positive order.")
    _check_window(kernel, mesh)

    q = kernel.q
    state = HistoryState.zeros(kernel.nodes, trace.M, q=q)
    binomials = np.array([math.comb(q, k) * (-1) ** k for k in range(q + 1)])
    out = np.empty((mesh.N, trace.M))
    for n in range(1, mesh.N + 1):
        tau = mesh.step(n)
        t_n = float(mesh.points[n])
        block = trace.block(n)
        scale = kernel.weights * np.exp(-kernel.nodes * tau)
        factors = binomials * t_n ** (q - np.arange(q + 1))
        combined = np.tensordot(factors, state.moments, axes=1)
        out[n - 1] = _local_rl(kernel.beta, block, tau) + scale @ combined
        history_update(state, block, kernel.nodes, tau)
    return out


def rl_integral_fast(trace: PolyTrace, kernel: SOEKernel, mesh: GradedMesh) -> np.ndarray:
    """Fast RL integral, unshifted for q = 0 and with moments otherwise."""
    if kernel.q == 0 and 0 < kernel.beta < 1:
        return alg1_fast_op(trace, kernel, mesh)
    return alg2_fast_op(trace, kernel, mesh)
