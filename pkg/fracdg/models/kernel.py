"""Sum-of-exponentials kernel model."""

import numpy as np
from attrs import field, frozen
from scipy import special

from fracdg.exceptions import InvalidInputError


def _as_readonly(values) -> np.ndarray:
    """Copy values into a read-only float array."""
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@frozen
class SOEKernel:
    """Sum-of-exponentials approximation of the power kernel omega_beta.

    The kernel represents ``omega_beta(t) ~ t**q * sum_j w_j * exp(-lambda_j * t)``
    for ``t`` in the validity window ``[delta, horizon]``.

    Attributes:
        beta: The exponent being approximated. May be >= 1 for shifted kernels.
        q: Shift order. The exponentials approximate omega_{beta - q}.
        eps: Target relative accuracy.
        delta: Lower end of the validity window.
        horizon: Upper end of the validity window.
        step_h: Trapezoid step used to generate the nodes.
        nodes: Positive, strictly increasing exponents lambda_j.
        weights: Weights w_j, already rescaled for the shift. Without a shift
            they all carry the sign of omega_beta(1).
        certified_error: Maximum sampled relative error, when certified.
    """

    beta: float
    q: int
    eps: float
    delta: float
    horizon: float
    step_h: float
    nodes: np.ndarray = field(converter=_as_readonly, eq=False, repr=False)
    weights: np.ndarray = field(converter=_as_readonly, eq=False, repr=False)
    certified_error: float | None = None

    def __attrs_post_init__(self) -> None:
        """Check the structural invariants of the kernel."""
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise InvalidInputError(
                (self.nodes.shape, self.weights.shape),
                "Kernel nodes and weights must be 1-D arrays of equal length.",
            )
        if self.nodes.size and (
            self.nodes[0] <= 0 or np.any(np.diff(self.nodes) <= 0)
        ):
            raise InvalidInputError(
                self.nodes[:3], "Kernel nodes must be positive and strictly increasing."
            )
        if self.q < 0:
            raise InvalidInputError(self.q, "Shift order must be nonnegative.")
        sign = np.sign(special.rgamma(self.beta))
        if self.q == 0 and np.any(self.weights * sign < 0):
            raise InvalidInputError(
                self.weights[:3],
                f"Unshifted kernel weights must share the sign of omega_{self.beta:g}(1).",
            )

    @property
    def Q(self) -> int:  # noqa: N802
        """Number of exponential modes."""
        return int(self.nodes.size)

    @property
    def base_beta(self) -> float:
        """Exponent of the unshifted kernel that the exponentials approximate."""
        return self.beta - self.q
