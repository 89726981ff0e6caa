"""Run configuration models."""

from enum import StrEnum, auto
from itertools import pairwise
from pathlib import Path

from attrs import field, frozen

from fracdg.exceptions import InvalidInputError


class Example(StrEnum):
    """Manufactured problems available to the harness."""

    ODE1 = auto()
    PDE1 = auto()


class SolveMode(StrEnum):
    """How the history of the fractional operator is evaluated."""

    DIRECT = auto()
    FAST = auto()


def _check_alpha(instance, attribute, value: float) -> None:
    if not 0 < value < 1:
        raise InvalidInputError(value, "Fractional order alpha must lie in (0, 1).")


def _check_degree(instance, attribute, value: int) -> None:
    if value not in (1, 2):
        raise InvalidInputError(value, "Temporal degree p must be 1 or 2.")


def _check_sizes(instance, attribute, value: tuple[int, ...]) -> None:
    if not value:
        raise InvalidInputError(value, "At least one mesh size N is required.")
    if any(n < 1 for n in value) or any(b <= a for a, b in pairwise(value)):
        raise InvalidInputError(value, "Mesh sizes must be positive and increasing.")


def _check_widths(instance, attribute, value: tuple[float, ...]) -> None:
    if any(h <= 0 or h >= 1 for h in value):
        raise InvalidInputError(value, "Spatial widths must lie in (0, 1).")
    if any(b >= a for a, b in pairwise(value)):
        raise InvalidInputError(value, "Spatial widths must be decreasing.")


@frozen
class RunConfig:
    """Configuration of one convergence or benchmark run.

    Attributes:
        example: The manufactured problem to solve.
        alpha: Fractional order in (0, 1).
        p: Temporal polynomial degree, 1 or 2.
        r: Grading exponent; None selects the optimal grading.
        n_list: Increasing mesh sizes N.
        h_list: Decreasing spatial widths, used by the PDE example only.
        mode: Direct or fast history evaluation.
        eps: Kernel accuracy for the fast mode; None selects it from the mesh.
        T: Final time.
        sigma: Regularity exponent used for the optimal grading; defaults to alpha.
        seed: Seed of the sample points of the residual gate.
        output: File the table is written to, in the format of its extension.
    """

    example: Example = Example.ODE1
    alpha: float = field(default=0.5, validator=_check_alpha)
    p: int = field(default=1, validator=_check_degree)
    r: float | None = None
    n_list: tuple[int, ...] = field(
        default=(32, 64, 128, 256, 512), converter=tuple, validator=_check_sizes
    )
    h_list: tuple[float, ...] = field(
        default=(), converter=tuple, validator=_check_widths
    )
    mode: SolveMode = SolveMode.DIRECT
    eps: float | None = None
    T: float = 4.0
    sigma: float | None = None
    seed: int = 0
    output: Path | None = None

    def __attrs_post_init__(self) -> None:
        """Validate cross-field constraints."""
        if self.r is not None and self.r < 1:
            raise InvalidInputError(self.r, "Grading exponent r must be at least 1.")
        if self.eps is not None and not 0 < self.eps < 1:
            raise InvalidInputError(self.eps, "Kernel accuracy must lie in (0, 1).")
        if self.T <= 0:
            raise InvalidInputError(self.T, "Final time must be positive.")
        if self.example == Example.PDE1 and not self.h_list:
            raise InvalidInputError(
                self.h_list, "The PDE example needs at least one spatial width."
            )

    @property
    def sigma_value(self) -> float:
        """Regularity exponent, falling back to alpha."""
        return self.alpha if self.sigma is None else self.sigma

    @property
    def r_label(self) -> str:
        """Column label of the grading exponent."""
        return "opt" if self.r is None else f"{self.r:g}"


@frozen
class TablePreset:
    """A named grid of runs reproducing one published convergence table.

    Attributes:
        name: Preset key, such as "t1".
        title: Human readable title.
        example: The manufactured problem solved.
        p: Temporal polynomial degree.
        alphas: Fractional orders, one block of columns each.
        rs: Grading exponents; None is the optimal grading.
        n_list: Mesh sizes N.
        h_list: Spatial widths for the PDE example.
        mode: Direct or fast history evaluation.
        eps: Kernel accuracy for fast runs; None selects it per mesh.
        rate_tolerance: Allowed deviation of observed rates from the reference.
    """

    name: str
    title: str
    example: Example
    p: int
    alphas: tuple[float, ...] = (0.2, 0.5, 0.8)
    rs: tuple[float | None, ...] = (None,)
    n_list: tuple[int, ...] = (32, 64, 128, 256, 512)
    h_list: tuple[float, ...] = ()
    mode: SolveMode = SolveMode.DIRECT
    eps: float | None = None
    rate_tolerance: float = 0.1

    def configs(self) -> list[RunConfig]:
        """Expand the preset into one RunConfig per (alpha, r) column."""
        return [
            RunConfig(
                example=self.example,
                alpha=alpha,
                p=self.p,
                r=r,
                n_list=self.n_list,
                h_list=self.h_list,
                mode=self.mode,
                eps=self.eps,
            )
            for alpha in self.alphas
            for r in self.rs
        ]
