"""Temporal mesh models."""

import numpy as np
from attrs import field, frozen


@frozen
class GradedMesh:
    """Temporal grid t_0 < t_1 < ... < t_N on [0, T].

    Attributes:
        T: Final time.
        N: Number of intervals.
        r: Grading exponent, t_n = (n/N)^r T.
        points: The N + 1 mesh points, with points[0] == 0 and points[N] == T.
        tau: The N interval lengths, tau[n - 1] being the length of I_n.
    """

    T: float
    N: int
    r: float
    points: np.ndarray = field(eq=False, repr=False)
    tau: np.ndarray = field(eq=False, repr=False)

    @property
    def tau_min(self) -> float:
        """Length of the shortest interval."""
        return float(self.tau.min())

    def interval(self, n: int) -> tuple[float, float]:
        """Return the end points (t_{n-1}, t_n) of interval I_n (1-based)."""
        return float(self.points[n - 1]), float(self.points[n])

    def step(self, n: int) -> float:
        """Return the length tau_n of interval I_n (1-based)."""
        return float(self.tau[n - 1])
