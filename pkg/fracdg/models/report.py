"""Convergence and benchmark report models."""

from enum import StrEnum, auto
from pathlib import Path

from attrs import frozen

from fracdg.models.config import Example, SolveMode


class ReportFormat(StrEnum):
    """File formats reports can be written in."""

    CSV = auto()
    JSON = auto()
    MARKDOWN = auto()

    @classmethod
    def from_path(cls, path: Path) -> "ReportFormat":
        """Format implied by a file extension; CSV unless .json or .md."""
        match path.suffix.lower():
            case ".json":
                return cls.JSON
            case ".md" | ".markdown":
                return cls.MARKDOWN
            case _:
                return cls.CSV


# Convergence tables


@frozen
class ErrorRow:
    """One cell of a convergence table.

    Attributes:
        alpha: Fractional order.
        r_label: Grading column label, "opt" for the optimal grading.
        r: Grading exponent actually used.
        n: Number of time intervals.
        h: Spatial width, None for scalar problems.
        error: Average error (sum_n tau_n |e^n|^2)^(1/2).
        rate: Observed rate against the previous row of the same column.
        wall_time_ms: Solve time in milliseconds.
        predicted_order: Rate guaranteed by the error bound for this grading.
    """

    alpha: float
    r_label: str
    r: float
    n: int
    h: float | None
    error: float
    rate: float | None
    wall_time_ms: float
    predicted_order: float | None = None


@frozen
class ErrorTable:
    """A convergence table with its run metadata.

    Attributes:
        title: Human readable title.
        example: The manufactured problem solved.
        p: Temporal polynomial degree.
        mode: Direct or fast history evaluation.
        eps: Kernel accuracy for fast runs.
        q_modes: Largest number of kernel modes used by fast runs.
        rows: Table rows in run order.
    """

    title: str
    example: Example
    p: int
    mode: SolveMode
    eps: float | None = None
    q_modes: int | None = None
    rows: tuple[ErrorRow, ...] = ()


# Fast versus direct benchmark


@frozen
class BenchRow:
    """Timings and solution differences of one fast versus direct comparison.

    Attributes:
        n: Number of time intervals.
        direct_ms: Median direct solve time in milliseconds.
        fast_ms: Median fast solve time in milliseconds.
        kernel_ms: Time to build and certify the kernel in milliseconds.
        ratio: direct_ms / fast_ms.
        q_modes: Number of kernel modes.
        max_difference: Largest nodal difference between the two solutions.
        weighted_difference: (sum_n tau_n |U - U_F|^2 (t_n))^(1/2).
        predicted_bound: Fast/direct error bound eps * t_N^alpha * t_1^-alpha.
    """

    n: int
    direct_ms: float
    fast_ms: float
    kernel_ms: float
    ratio: float
    q_modes: int
    max_difference: float
    weighted_difference: float
    predicted_bound: float


@frozen
class DifferenceSample:
    """Nodal difference between fast and direct solutions at one mesh point."""

    n: int
    t: float
    difference: float


@frozen
class BenchReport:
    """Result of a fast versus direct benchmark.

    Attributes:
        alpha: Fractional order.
        r: Grading exponent.
        p: Temporal polynomial degree.
        eps: Kernel accuracy, None when chosen per mesh.
        rows: One row per mesh size.
        profile: Per-step differences of the largest run.
    """

    alpha: float
    r: float
    p: int
    eps: float | None
    rows: tuple[BenchRow, ...] = ()
    profile: tuple[DifferenceSample, ...] = ()
