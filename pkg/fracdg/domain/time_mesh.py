"""Graded temporal meshes and the error rates they predict."""

import math

import numpy as np

from fracdg.exceptions import InvalidInputError
from fracdg.models.mesh import GradedMesh


def graded_mesh(T: float, N: int, r: float) -> GradedMesh:  # noqa: N803
    """Build the graded mesh t_n = (n/N)^r T.

    Args:
        T: Final time, positive.
        N: Number of intervals, at least 1.
        r: Grading exponent, at least 1.

    Returns:
        The mesh, with t_N equal to T exactly and tau computed once by
        subtraction of consecutive points.

    Raises:
        InvalidInputError: If any argument is out of range.
    """
    if not T > 0:
        raise InvalidInputError(T, "Final time T must be positive.")
    if N < 1:
        raise InvalidInputError(N, "Number of intervals N must be at least 1.")
    if not r >= 1:
        raise InvalidInputError(r, "Grading exponent r must be at least 1.")

    points = (np.arange(N + 1, dtype=float) / N) ** r * T
    points[0] = 0.0
    points[-1] = T
    tau = np.diff(points)
    points.setflags(write=False)
    tau.setflags(write=False)
    return GradedMesh(T=float(T), N=int(N), r=float(r), points=points, tau=tau)


def optimal_r(alpha: float, sigma: float, p: int) -> float:
    """Smallest grading exponent giving the optimal temporal rate.

    Returns (2p + 2 - alpha) / (1 + 2 sigma - alpha). The value may fall
    below 1 for very regular solutions; callers clamp it to 1.
    """
    return (2 * p + 2 - alpha) / (1 + 2 * sigma - alpha)


def predicted_error_rate(
    n: int,
    N: int,  # noqa: N803
    sigma: float,
    alpha: float,
    r: float,
    p: int,
    T: float = 1.0,  # noqa: N803
) -> float:
    """Shape of the squared L2-in-time error bound up to t_n.

    Follows the three grading regimes: below the optimal exponent the bound
    is ``N^{-r(1+2 sigma-alpha)-alpha}``, at it ``N^{-2p-2}(1 + ln n)``, and above
    it ``N^{-2p-2} t_n^{1+2 sigma-alpha-(2p+2-alpha)/r}``. Constants are not
    included.
    """
    if not 1 <= n <= N:
        raise InvalidInputError(n, f"Step index must be in 1..{N}.")
    r_star = optimal_r(alpha, sigma, p)
    if math.isclose(r, r_star, rel_tol=1e-12):
        return N ** (-2 * p - 2) * (1 + math.log(n))
    if r < r_star:
        return N ** (-r * (1 + 2 * sigma - alpha) - alpha)
    t_n = (n / N) ** r * T
    return N ** (-2 * p - 2) * t_n ** (1 + 2 * sigma - alpha - (2 * p + 2 - alpha) / r)


def predicted_order(alpha: float, sigma: float, r: float, p: int) -> float:
    """Expected observed rate of the average error, min(r(1+2 sigma-alpha)+alpha, 2p+2)/2."""
    return min(r * (1 + 2 * sigma - alpha) + alpha, 2 * p + 2) / 2
