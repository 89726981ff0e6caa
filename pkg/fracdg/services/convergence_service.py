"""Service layer for convergence studies of the DG solver."""

from __future__ import annotations

import json
import math
import time
from collections.abc import Generator, Sequence
from dataclasses import dataclass
from pathlib import Path

import attrs
import cattrs
import numpy as np

from fracdg.core.converter import get_json_converter
from fracdg.core.logging import logger
from fracdg.domain import dg_solver, fem1d
from fracdg.domain.time_mesh import graded_mesh, optimal_r, predicted_order
from fracdg.exceptions import InvalidInputError, OutputError, SolverError
from fracdg.models.config import Example, RunConfig, SolveMode, TablePreset
from fracdg.models.output import BaseMessage, ProgressUpdate, Warning
from fracdg.models.report import ErrorRow, ErrorTable
from fracdg.models.system import SpatialSystem
from fracdg.models.trace import PolyTrace
from fracdg.services import problems

PRESETS: dict[str, TablePreset] = {
    "t1": TablePreset(
        name="t1",
        title="Average errors, scalar example, p = 1",
        example=Example.ODE1,
        p=1,
        rs=(1.0, 1.2, 1.6, None, 3.5),
    ),
    "t2": TablePreset(
        name="t2",
        title="Average errors, scalar example, p = 2",
        example=Example.ODE1,
        p=2,
        rs=(2.0, 2.2, 2.5, None, 5.0),
    ),
    "t3": TablePreset(
        name="t3",
        title="Average errors, subdiffusion example, p = 1, h = 1/256",
        example=Example.PDE1,
        p=1,
        rs=(1.0, 1.2, 1.6, None, 3.5),
        h_list=(1 / 256,),
    ),
    "t4": TablePreset(
        name="t4",
        title="Spatial errors, subdiffusion example, p = 1, N = 20000",
        example=Example.PDE1,
        p=1,
        rs=(1.0, 1.2, 1.6, None, 3.5),
        n_list=(20000,),
        h_list=(1 / 4, 1 / 8, 1 / 16, 1 / 32, 1 / 64),
        mode=SolveMode.FAST,
        eps=1e-13,
        rate_tolerance=0.05,
    ),
}
"""Run grids reproducing the published convergence tables."""


def average_error(trace: PolyTrace, system: SpatialSystem) -> float:
    """Average error ``(sum_n tau_n ||U(t_n^-) - u(t_n)||^2)^(1/2)``.

    Scalar systems use the Euclidean norm, finite element systems the
    L2(0, 1) norm of ``fem1d.l2_error``.

    Raises:
        InvalidInputError: If the system has no exact solution.
    """
    mesh = trace.mesh
    if system.grid is not None and system.exact_field is not None:

        def spatial(value: np.ndarray, t: float) -> float:
            return fem1d.l2_error(system.grid, value, lambda x: system.exact_field(x, t))

    elif system.exact is not None:

        def spatial(value: np.ndarray, t: float) -> float:
            return float(np.linalg.norm(value - system.exact(t)))

    else:
        raise InvalidInputError(system.name, "System has no exact solution.")

    total = 0.0
    for n, value in enumerate(trace.left_limits(), start=1):
        total += mesh.step(n) * spatial(value, float(mesh.points[n])) ** 2
    return math.sqrt(total)


def observed_rates(errors: Sequence[float], sizes: Sequence[float]) -> list[float | None]:
    """Rates log(e_{i-1}/e_i) / log(s_i/s_{i-1}); None for the first entry.

    Sizes grow with refinement, so pass N for temporal studies and 1/h for
    spatial ones.
    """
    rates: list[float | None] = [None]
    for i in range(1, len(errors)):
        if errors[i] <= 0 or errors[i - 1] <= 0:
            rates.append(None)
            continue
        rates.append(math.log(errors[i - 1] / errors[i]) / math.log(sizes[i] / sizes[i - 1]))
    return rates


def resolve_r(config: RunConfig) -> tuple[float, bool]:
    """Grading exponent of a run and whether the optimal value was clamped to 1."""
    if config.r is not None:
        return config.r, False
    r = optimal_r(config.alpha, config.sigma_value, config.p)
    return (1.0, True) if r < 1 else (r, False)


@dataclass(slots=True, frozen=True)
class ConvergenceService:
    """Service running convergence studies of the manufactured examples."""

    def solve(
        self, config: RunConfig, n: int, h: float | None = None
    ) -> tuple[PolyTrace, float, int | None]:
        """Solve one configuration on N intervals.

        Returns:
            The trace, the average error and the number of kernel modes
            (None for direct solves).
        """
        r, _ = resolve_r(config)
        mesh = graded_mesh(config.T, n, r)
        system = problems.build_system(config.example, config.alpha, h)
        kernel = None
        if config.mode == SolveMode.FAST:
            kernel = dg_solver.fast_kernel(mesh, config.alpha, config.eps)
        trace = dg_solver.solve(system, mesh, config.alpha, config.p, config.mode, kernel)
        return trace, average_error(trace, system), None if kernel is None else kernel.Q

    def _cell(self, config: RunConfig, n: int, h: float | None) -> tuple[float, float, int | None]:
        started = time.perf_counter()
        try:
            _, error, modes = self.solve(config, n, h)
        except SolverError as exc:
            raise SolverError(
                exc.step,
                f"{exc.message} [alpha={config.alpha:g}, r={config.r_label}, N={n}]",
            ) from exc
        elapsed = 1000 * (time.perf_counter() - started)
        logger.info(
            "Cell alpha=%g r=%s N=%d h=%s: error %.3e in %.1f ms.",
            config.alpha,
            config.r_label,
            n,
            h,
            error,
            elapsed,
        )
        return error, elapsed, modes

    def run_convergence(
        self, config: RunConfig
    ) -> Generator[BaseMessage, None, tuple[list[ErrorRow], int | None]]:
        """Run one (alpha, r) column over the mesh sizes and spatial widths.

        When several widths are given with a single N the rates are spatial,
        otherwise they are temporal for every width.

        Yields:
            Progress updates and warnings.

        Returns:
            The rows in run order and the largest kernel mode count.
        """
        problems.residual_gate(config.example, config.alpha, config.seed)
        r, clamped = resolve_r(config)
        if clamped:
            logger.warning("Optimal grading below 1 for alpha=%g; using r = 1.", config.alpha)
            yield Warning(f"Optimal grading below 1 for alpha={config.alpha:g}; using r = 1.")

        widths: tuple[float | None, ...] = config.h_list or (None,)
        spatial = len(widths) > 1 and len(config.n_list) == 1
        stage = f"conv.{config.alpha:g}.{config.r_label}"
        total = len(widths) * len(config.n_list)
        description = f"alpha={config.alpha:g}, r={config.r_label}"

        rows: list[ErrorRow] = []
        modes: int | None = None
        done = 0
        yield ProgressUpdate(stage, description, done, total)
        groups = [[(config.n_list[0], h) for h in widths]] if spatial else [
            [(n, h) for n in config.n_list] for h in widths
        ]
        for group in groups:
            cells = []
            for n, h in group:
                error, elapsed, q = self._cell(config, n, h)
                if q is not None:
                    modes = q if modes is None else max(modes, q)
                cells.append((n, h, error, elapsed))
                done += 1
                yield ProgressUpdate(stage, description, done, total)

            sizes = [1 / h for _, h, _, _ in cells] if spatial else [n for n, *_ in cells]
            rates = observed_rates([c[2] for c in cells], sizes)
            order = 2.0 if spatial else predicted_order(config.alpha, config.sigma_value, r, config.p)
            rows.extend(
                ErrorRow(
                    alpha=config.alpha,
                    r_label=config.r_label,
                    r=r,
                    n=n,
                    h=h,
                    error=error,
                    rate=rate,
                    wall_time_ms=elapsed,
                    predicted_order=order,
                )
                for (n, h, error, elapsed), rate in zip(cells, rates, strict=True)
            )
        return rows, modes

    def run_table(self, preset: TablePreset) -> Generator[BaseMessage, None, ErrorTable]:
        """Run every column of a preset and collect one table.

        Yields:
            Progress updates and warnings.
        """
        rows: list[ErrorRow] = []
        modes: int | None = None
        for config in preset.configs():
            column, q = yield from self.run_convergence(config)
            rows.extend(column)
            if q is not None:
                modes = q if modes is None else max(modes, q)
        logger.info("Finished table %s with %d rows.", preset.name, len(rows))
        return ErrorTable(
            title=preset.title,
            example=preset.example,
            p=preset.p,
            mode=preset.mode,
            eps=preset.eps,
            q_modes=modes,
            rows=tuple(rows),
        )

    def run_config(self, config: RunConfig) -> Generator[BaseMessage, None, ErrorTable]:
        """Run a single custom configuration as a table."""
        rows, modes = yield from self.run_convergence(config)
        return ErrorTable(
            title=f"Average errors, {config.example}, p = {config.p}",
            example=config.example,
            p=config.p,
            mode=config.mode,
            eps=config.eps,
            q_modes=modes,
            rows=tuple(rows),
        )

    def get_preset(self, name: str, **overrides) -> TablePreset:
        """Return a preset, with non-None keyword overrides applied.

        Raises:
            InvalidInputError: If the preset does not exist.
        """
        if name not in PRESETS:
            raise InvalidInputError(name, f"Unknown table preset. Choose from {', '.join(PRESETS)}.")
        return self.with_overrides(PRESETS[name], **overrides)

    def with_overrides(self, preset: TablePreset, **overrides) -> TablePreset:
        """Return a copy of ``preset`` with the non-None keyword overrides applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return attrs.evolve(preset, **changes)

    def load_config(self, path: Path) -> RunConfig:
        """Read a RunConfig from a JSON file.

        Raises:
            OutputError: If the file cannot be read or parsed.
            InvalidInputError: If the values are invalid.
        """
        try:
            with path.open() as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise OutputError(path, f"Could not read configuration: {exc}") from exc
        try:
            return get_json_converter().structure(data, RunConfig)
        except cattrs.ClassValidationError as exc:
            causes = "; ".join(str(e) for e in exc.exceptions)
            raise InvalidInputError(data, f"Invalid configuration: {causes}") from exc
