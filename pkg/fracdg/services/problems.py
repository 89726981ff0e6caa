"""Manufactured test problems and their residual gate.

Both problems have the exact solution profile ``1 + t^alpha + t^(2 alpha)``,
either as a scalar ODE ``D^alpha u + u = f`` or multiplied by sin(2 pi x) as
the subdiffusion equation ``D^alpha u - u_xx = f`` on (0, 1).
"""

import functools
import math

import numpy as np
from scipy import integrate, sparse, special

from fracdg.core.logging import logger
from fracdg.domain import fem1d
from fracdg.exceptions import InvalidInputError, ResidualGateError
from fracdg.models.config import Example
from fracdg.models.system import FemGrid, SpatialSystem

RESIDUAL_TOLERANCE = 1e-8
RESIDUAL_SAMPLES = 20
TWO_PI = 2 * math.pi


def exact_profile(alpha: float, t: float | np.ndarray) -> np.ndarray:
    """Time profile 1 + t^alpha + t^(2 alpha) of both exact solutions."""
    t = np.asarray(t, dtype=float)
    return 1.0 + t**alpha + t ** (2 * alpha)


def _caputo_profile(alpha: float, t: np.ndarray) -> np.ndarray:
    """Caputo derivative of the profile from the monomial rule."""
    ratio = special.gamma(2 * alpha + 1) / special.gamma(alpha + 1)
    return special.gamma(alpha + 1) + ratio * t**alpha


def ode_forcing(alpha: float, t: float | np.ndarray) -> np.ndarray:
    """Forcing of the scalar problem.

    ``f = 1 + Gamma(alpha+1) + (1 + Gamma(2 alpha+1)/Gamma(alpha+1)) t^alpha + t^(2 alpha)``.
    """
    t = np.asarray(t, dtype=float)
    return _caputo_profile(alpha, t) + exact_profile(alpha, t)


def pde_amplitude(alpha: float, t: float | np.ndarray) -> np.ndarray:
    """Time amplitude of the forcing of the PDE problem, multiplying sin(2 pi x)."""
    t = np.asarray(t, dtype=float)
    return _caputo_profile(alpha, t) + TWO_PI**2 * exact_profile(alpha, t)


def example1(alpha: float) -> SpatialSystem:
    """Scalar problem D^alpha u + u = f with u(0) = 1."""
    identity = sparse.csr_matrix(np.ones((1, 1)))
    return SpatialSystem(
        name=str(Example.ODE1),
        mass=identity,
        stiffness=identity,
        load=lambda times: ode_forcing(alpha, times)[:, None],
        u0=np.ones(1),
        exact=lambda t: np.atleast_1d(exact_profile(alpha, t)),
    )


def example2(alpha: float, grid: FemGrid) -> SpatialSystem:
    """Subdiffusion problem D^alpha u - u_xx = f on (0, 1) with linear elements.

    The initial data is the L2 projection of sin(2 pi x).
    """

    def shape(x: np.ndarray) -> np.ndarray:
        return np.sin(TWO_PI * x)

    spatial_load = fem1d.load_vector(grid, shape)
    return SpatialSystem(
        name=str(Example.PDE1),
        mass=grid.mass,
        stiffness=grid.stiffness,
        load=lambda times: np.outer(pde_amplitude(alpha, times), spatial_load),
        u0=fem1d.l2_projection(grid, shape),
        exact=lambda t: exact_profile(alpha, t) * shape(grid.nodes),
        exact_field=lambda x, t: exact_profile(alpha, t) * shape(x),
        grid=grid,
    )


def caputo_power(alpha: float, nu: float, t: float) -> float:
    """Caputo derivative of s^nu at t, by algebraic-weight quadrature.

    Evaluates ``nu / Gamma(1 - alpha) int_0^t s^(nu-1) (t - s)^(-alpha) ds``
    without using the monomial rule, as an independent check of it.
    """
    if nu == 0:
        return 0.0
    value, _ = integrate.quad(
        lambda s: 1.0,
        0.0,
        t,
        weight="alg",
        wvar=(nu - 1.0, -alpha),
        epsabs=1e-14,
        epsrel=1e-13,
    )
    return nu * value / math.gamma(1 - alpha)


def _caputo_oracle(alpha: float, t: float) -> float:
    return caputo_power(alpha, alpha, t) + caputo_power(alpha, 2 * alpha, t)


def _second_derivative(func, x: float, h: float = 1e-2) -> float:
    """Central second difference, extrapolated twice to remove the h^2 and h^4 terms."""

    def central(step: float) -> float:
        return (func(x + step) - 2 * func(x) + func(x - step)) / step**2

    def once(step: float) -> float:
        return (4 * central(step / 2) - central(step)) / 3

    return (16 * once(h / 2) - once(h)) / 15


def residuals(example: Example, alpha: float, samples: int = RESIDUAL_SAMPLES, seed: int = 0) -> np.ndarray:
    """Scaled residuals ``|res| / max(1, |f|)`` of an example at random points."""
    rng = np.random.default_rng(seed)
    times = rng.uniform(0.01, 4.0, samples)
    out = np.empty(samples)
    if example == Example.ODE1:
        for i, t in enumerate(times):
            f = float(ode_forcing(alpha, t))
            residual = _caputo_oracle(alpha, t) + float(exact_profile(alpha, t)) - f
            out[i] = abs(residual) / max(1.0, abs(f))
        return out

    points = rng.uniform(0.05, 0.95, samples)
    for i, (x, t) in enumerate(zip(points, times, strict=True)):
        profile = float(exact_profile(alpha, t))
        f = float(pde_amplitude(alpha, t)) * math.sin(TWO_PI * x)
        u_xx = _second_derivative(lambda y, p=profile: p * math.sin(TWO_PI * y), x)
        residual = _caputo_oracle(alpha, t) * math.sin(TWO_PI * x) - u_xx - f
        out[i] = abs(residual) / max(1.0, abs(f))
    return out


@functools.cache
def residual_gate(example: Example, alpha: float, seed: int = 0) -> float:
    """Check that an example's forcing matches its exact solution.

    The residuals are sampled at points drawn from a generator seeded with
    ``seed``.

    Returns:
        The largest scaled residual.

    Raises:
        ResidualGateError: If a residual exceeds the tolerance.
    """
    if not 0 < alpha < 1:
        raise InvalidInputError(alpha, "Fractional order alpha must lie in (0, 1).")
    worst = float(residuals(Example(example), alpha, seed=seed).max())
    logger.debug("Residual gate %s alpha=%g seed=%d: %.2e", example, alpha, seed, worst)
    if worst > RESIDUAL_TOLERANCE:
        raise ResidualGateError(
            f"Example {example} at alpha={alpha:g} has residual {worst:.2e}, "
            f"above {RESIDUAL_TOLERANCE:.0e}."
        )
    return worst


def build_system(example: Example, alpha: float, h: float | None = None) -> SpatialSystem:
    """Build the spatial system of an example."""
    if example == Example.ODE1:
        return example1(alpha)
    if h is None:
        raise InvalidInputError(h, "The PDE example needs a spatial width.")
    return example2(alpha, fem1d.build_grid(h))
