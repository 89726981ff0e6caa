"""Service layer comparing fast and direct solves."""

import functools
import math
import statistics
import time
from collections.abc import Callable, Generator
from dataclasses import dataclass
from typing import TypeVar

import numpy as np

from fracdg.core.logging import logger
from fracdg.domain import dg_solver
from fracdg.domain.time_mesh import graded_mesh
from fracdg.models.config import RunConfig, SolveMode
from fracdg.models.output import BaseMessage, ProgressUpdate
from fracdg.models.report import BenchReport, BenchRow, DifferenceSample
from fracdg.models.trace import PolyTrace
from fracdg.services import problems
from fracdg.services.convergence_service import resolve_r

WARMUP_N = 16

T = TypeVar("T")


def _timed(func: Callable[[], T]) -> tuple[T, float]:
    started = time.perf_counter()
    result = func()
    return result, 1000 * (time.perf_counter() - started)


def nodal_differences(direct: PolyTrace, fast: PolyTrace) -> np.ndarray:
    """Per-step differences ||U(t_n^-) - U_F(t_n^-)||."""
    return np.linalg.norm(direct.left_limits() - fast.left_limits(), axis=1)


def weighted_difference(direct: PolyTrace, differences: np.ndarray) -> float:
    """(sum_n tau_n ||U - U_F||^2 (t_n))^(1/2)."""
    return math.sqrt(float(np.sum(direct.mesh.tau * differences**2)))


@dataclass(slots=True, frozen=True)
class BenchService:
    """Service timing fast against direct solves."""

    def bench_fast_vs_direct(
        self, config: RunConfig, repeats: int = 3
    ) -> Generator[BaseMessage, None, BenchReport]:
        """Time both solvers and measure their difference for every N.

        Each timing is the median of ``repeats`` runs after a small warmup
        solve; kernel construction is timed separately from the fast solve.

        Yields:
            Progress updates.

        Returns:
            The benchmark report, with the per-step profile of the largest N.
        """
        r, _ = resolve_r(config)
        h = config.h_list[0] if config.h_list else None
        system = problems.build_system(config.example, config.alpha, h)
        total = len(config.n_list)
        yield ProgressUpdate("bench", "Warming up", 0, total)

        warm_mesh = graded_mesh(config.T, WARMUP_N, r)
        dg_solver.solve(system, warm_mesh, config.alpha, config.p)
        dg_solver.solve(
            system,
            warm_mesh,
            config.alpha,
            config.p,
            SolveMode.FAST,
            dg_solver.fast_kernel(warm_mesh, config.alpha, config.eps),
        )

        rows: list[BenchRow] = []
        profile: tuple[DifferenceSample, ...] = ()
        for index, n in enumerate(config.n_list, start=1):
            yield ProgressUpdate("bench", f"N = {n}", index - 1, total)
            mesh = graded_mesh(config.T, n, r)
            eps = dg_solver.default_eps(mesh, config.alpha) if config.eps is None else config.eps

            direct_times, fast_times = [], []
            for _ in range(repeats):
                direct, elapsed = _timed(
                    functools.partial(dg_solver.solve, system, mesh, config.alpha, config.p)
                )
                direct_times.append(elapsed)
            kernel, kernel_ms = _timed(
                functools.partial(dg_solver.fast_kernel, mesh, config.alpha, eps)
            )
            for _ in range(repeats):
                fast, elapsed = _timed(
                    functools.partial(
                        dg_solver.solve,
                        system,
                        mesh,
                        config.alpha,
                        config.p,
                        SolveMode.FAST,
                        kernel,
                    )
                )
                fast_times.append(elapsed)

            differences = nodal_differences(direct, fast)
            direct_ms = statistics.median(direct_times)
            fast_ms = statistics.median(fast_times)
            rows.append(
                BenchRow(
                    n=n,
                    direct_ms=direct_ms,
                    fast_ms=fast_ms,
                    kernel_ms=kernel_ms,
                    ratio=direct_ms / fast_ms,
                    q_modes=kernel.Q,
                    max_difference=float(differences.max()),
                    weighted_difference=weighted_difference(direct, differences),
                    predicted_bound=dg_solver.fast_error_bound(eps, mesh, config.alpha),
                )
            )
            logger.info(
                "Bench N=%d: direct %.1f ms, fast %.1f ms, Q=%d, max difference %.2e.",
                n,
                direct_ms,
                fast_ms,
                kernel.Q,
                differences.max(),
            )
            if index == total:
                profile = tuple(
                    DifferenceSample(n=k, t=float(mesh.points[k]), difference=float(d))
                    for k, d in enumerate(differences, start=1)
                )
        yield ProgressUpdate("bench", "Done", total, total)
        return BenchReport(
            alpha=config.alpha, r=r, p=config.p, eps=config.eps, rows=tuple(rows), profile=profile
        )
