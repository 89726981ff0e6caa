"""Sum-of-exponentials approximation of power kernels.

For beta < 1 the kernel has the Laplace representation

    omega_beta(t) = sin(beta pi) / pi * int_R exp(-t e^x + (1 - beta) x) dx,

which the trapezoid rule with step h turns into ``sum_j w_j exp(-lambda_j t)``
with ``lambda_j = e^(j h)`` and ``w_j = sin(beta pi)/pi * h * e^((1-beta) j h)``.
The sum is truncated where the neglected terms fall below eps / 4 relative
to omega_beta anywhere in ``[delta, T]`` and certified on a dense log-spaced
sample. Exponents beta >= beta0 are handled by shifting:
``omega_beta(t) = t^q omega_{beta-q}(t) / prod_{l=1..q} (beta - l)``.
"""

import math

import attrs
import numpy as np
from scipy import special

from fracdg.core.logging import logger
from fracdg.exceptions import CertificationError, InvalidInputError
from fracdg.models.kernel import SOEKernel

SAMPLES = 10_000
"""Number of log-spaced points used to certify a kernel."""

MAX_REFINEMENTS = 6

_CHUNK = 2_000
_MAX_SCAN = 100_000


def _initial_step(beta: float, eps: float) -> float:
    return 2 * math.pi / (math.log(3) + (1 - beta) + math.log(1 / eps))


def _log_relative_term(beta: float, h: float, x: float, t: float) -> float:
    """Log of one trapezoid term at node e^x relative to omega_beta(t)."""
    y = x + math.log(t)
    return math.log(h) - math.exp(y) + (1 - beta) * y - special.gammaln(1 - beta)


def _truncation(beta: float, h: float, eps: float, delta: float, T: float) -> tuple[int, int]:  # noqa: N803
    """Find the first and last trapezoid index that must be kept."""
    target = math.log(eps / 4)

    # fast modes: the terms decay double exponentially, worst at t = delta
    j_hi = math.ceil((math.log(1 - beta) - math.log(delta)) / h)
    for _ in range(_MAX_SCAN):
        if _log_relative_term(beta, h, j_hi * h, delta) <= target:
            break
        j_hi += 1

    # slow modes: a geometric tail, worst at t = T
    tail = -math.log1p(-math.exp(-(1 - beta) * h))
    j_lo = math.floor((math.log(1 - beta) - math.log(T)) / h)
    for _ in range(_MAX_SCAN):
        if _log_relative_term(beta, h, j_lo * h, T) + tail <= target:
            break
        j_lo -= 1
    return j_lo, j_hi


def _trapezoid(beta: float, h: float, j_lo: int, j_hi: int) -> tuple[np.ndarray, np.ndarray]:
    x = h * np.arange(j_lo, j_hi + 1, dtype=float)
    nodes = np.exp(x)
    weights = math.sin(beta * math.pi) / math.pi * h * np.exp((1 - beta) * x)
    return nodes, weights


def evaluate_soe(kernel: SOEKernel, t: float | np.ndarray) -> float | np.ndarray:
    """Evaluate ``t^q sum_j w_j exp(-lambda_j t)``."""
    times = np.asarray(t, dtype=float)
    flat = np.atleast_1d(times).ravel()
    values = np.empty_like(flat)
    for start in range(0, flat.size, _CHUNK):
        chunk = flat[start : start + _CHUNK]
        values[start : start + _CHUNK] = (
            np.exp(-np.outer(chunk, kernel.nodes)) @ kernel.weights
        ) * chunk**kernel.q
    values = values.reshape(times.shape)
    return float(values) if values.ndim == 0 else values


def validate_soe(kernel: SOEKernel, samples: int = SAMPLES) -> float:
    """Maximum relative error of the kernel on log-spaced points of its window."""
    t = np.geomspace(kernel.delta, kernel.horizon, samples)
    exact = np.power(t, kernel.beta - 1.0) * special.rgamma(kernel.beta)
    approx = evaluate_soe(kernel, t)
    return float(np.max(np.abs(approx - exact) / np.abs(exact)))


def _build(
    beta: float, eps: float, delta: float, T: float, q: int, scale: float, target: float  # noqa: N803
) -> SOEKernel:
    h = _initial_step(beta - q, eps)
    achieved = math.inf
    for attempt in range(MAX_REFINEMENTS + 1):
        j_lo, j_hi = _truncation(beta - q, h, eps, delta, T)
        nodes, weights = _trapezoid(beta - q, h, j_lo, j_hi)
        kernel = SOEKernel(
            beta=beta,
            q=q,
            eps=eps,
            delta=delta,
            horizon=T,
            step_h=h,
            nodes=nodes,
            weights=weights * scale,
        )
        logger.debug(
            "SOE attempt %d: h=%.4f, indices %d..%d, %d modes.",
            attempt,
            h,
            j_lo,
            j_hi,
            kernel.Q,
        )
        achieved = validate_soe(kernel)
        if achieved <= target:
            if attempt:
                logger.warning(
                    "SOE kernel for beta=%g needed %d step refinement(s).", beta, attempt
                )
            logger.info(
                "Built SOE kernel: beta=%g, q=%d, %d modes, error %.2e on [%.2e, %.2e].",
                beta,
                q,
                kernel.Q,
                achieved,
                delta,
                T,
            )
            return attrs.evolve(kernel, certified_error=achieved)
        h /= 2
    raise CertificationError(achieved, target)


def _check_window(beta: float, eps: float, delta: float, T: float) -> None:  # noqa: N803
    if not 0 < eps < 1:
        raise InvalidInputError(eps, "Kernel accuracy eps must lie in (0, 1).")
    if not 0 < delta < T:
        raise InvalidInputError((delta, T), "Expected 0 < delta < T.")
    if beta <= 0 and float(beta).is_integer():
        raise InvalidInputError(beta, "omega vanishes at nonpositive integer beta.")


def build_soe(beta: float, eps: float, delta: float, T: float) -> SOEKernel:  # noqa: N803
    """Build a certified kernel with relative error at most eps on [delta, T].

    Args:
        beta: Exponent, beta < 1 and not a nonpositive integer.
        eps: Target relative accuracy in (0, 1).
        delta: Start of the validity window, positive.
        T: End of the validity window, greater than delta.

    Returns:
        An unshifted kernel (q = 0) carrying the certified error.

    Raises:
        InvalidInputError: If an argument is out of range.
        CertificationError: If six halvings of the step do not reach eps.
    """
    _check_window(beta, eps, delta, T)
    if not beta < 1:
        raise InvalidInputError(beta, "Unshifted kernels need beta < 1.")
    return _build(beta, eps, delta, T, q=0, scale=1.0, target=eps)


def build_soe_shifted(
    beta: float, eps: float, delta: float, T: float, beta0: float = 0.5  # noqa: N803
) -> SOEKernel:
    """Build a kernel for any admissible beta, shifting by q = ceil(beta - beta0).

    Raises:
        InvalidInputError: If beta0 >= 1, or some beta - l vanishes.
        CertificationError: If the shifted kernel cannot be certified.
    """
    _check_window(beta, eps, delta, T)
    if not beta0 < 1:
        raise InvalidInputError(beta0, "Shift cap beta0 must be below 1.")
    q = max(0, math.ceil(beta - beta0))
    factors = [beta - ell for ell in range(1, q + 1)]
    if any(f == 0 for f in factors) or (beta - q == 0):
        raise InvalidInputError(beta, "Cannot shift an integer exponent.")
    scale = 1.0 / math.prod(factors) if factors else 1.0
    return _build(beta, eps, delta, T, q=q, scale=scale, target=eps)
