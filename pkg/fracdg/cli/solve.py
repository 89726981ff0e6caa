"""CLI commands solving the manufactured examples."""

import time
from pathlib import Path

import click

from fracdg.cli.utils import essentials, flags
from fracdg.cli.utils.builders import build_table
from fracdg.cli.utils.display import display, display_success, loading_spinner
from fracdg.cli.utils.formatters import format_error, format_h, format_ms
from fracdg.cli.utils.models import Column
from fracdg.cli.utils.overrides import FracDGCommand
from fracdg.core.app import AppState
from fracdg.core.logging import logger
from fracdg.models.config import Example, RunConfig, SolveMode

_COLUMNS = [
    Column("key", name="Property", style="dim", getter=lambda item: item[0]),
    Column("value", name="Value", getter=lambda item: item[1], justify="right"),
]


def _common(func):
    options = [
        flags.alpha(),
        flags.degree(),
        flags.grading(),
        click.option(
            "--N",
            "-N",
            "n",
            type=click.IntRange(min=1),
            default=64,
            show_default=True,
            help="Number of time intervals.",
        ),
        flags.mode(),
        flags.accuracy(),
        flags.final_time(),
        click.option(
            "--trace",
            "trace_file",
            type=click.Path(dir_okay=False, writable=True, resolve_path=True, path_type=Path),
            help="Write every DG coefficient as CSV.",
        ),
        click.option(
            "--samples",
            "samples_file",
            type=click.Path(dir_okay=False, writable=True, resolve_path=True, path_type=Path),
            help="Write the solution sampled on a uniform time grid as CSV.",
        ),
        click.option(
            "--points",
            type=click.IntRange(min=2),
            default=401,
            show_default=True,
            help="Number of sample times for --samples.",
        ),
    ]
    for option in options:
        func = option(func)
    return func


def _run(
    state: AppState,
    config: RunConfig,
    n: int,
    h: float | None,
    trace_file: Path | None,
    samples_file: Path | None,
    points: int,
) -> None:
    import numpy as np

    from fracdg.services.convergence_service import resolve_r

    r, clamped = resolve_r(config)
    if clamped:
        logger.warning("Optimal grading below 1 for alpha=%g; using r = 1.", config.alpha)

    started = time.perf_counter()
    with loading_spinner(f"Solving {config.example} with N = {n}..."):
        trace, error, modes = state.app.convergence.solve(config, n, h)
    elapsed = 1000 * (time.perf_counter() - started)

    rows = [
        ("example", str(config.example)),
        ("alpha", f"{config.alpha:g}"),
        ("p", str(config.p)),
        ("r", f"{r:g}"),
        ("N", str(n)),
        ("h", format_h(h)),
        ("mode", str(config.mode)),
        ("kernel modes Q", "-" if modes is None else str(modes)),
        ("U(T-)", np.array2string(trace.left_limit(n)[:4], precision=6)),
        ("average error", format_error(error)),
        ("wall time (ms)", format_ms(elapsed)),
    ]
    display(build_table(rows, _COLUMNS))

    if trace_file is not None:
        state.app.report.export_trace(trace, trace_file)
        display_success(f"Coefficients written to {trace_file}.")
    if samples_file is not None:
        times = np.linspace(0.0, config.T, points)
        state.app.report.export_samples(trace, times, samples_file)
        display_success(f"Samples written to {samples_file}.")


@essentials.group()
def cli():
    """Group for solve commands."""


@_common
@essentials.command(parent=cli, cls=FracDGCommand)
@click.pass_context
def ode(
    ctx: click.Context,
    alpha: float,
    p: int,
    r: float | None,
    n: int,
    mode: SolveMode,
    eps: float | None,
    T: float,  # noqa: N803
    trace_file: Path | None,
    samples_file: Path | None,
    points: int,
) -> None:
    """Solve the scalar example D^alpha u + u = f on (0, T]."""
    state = ctx.ensure_object(AppState)
    config = RunConfig(
        example=Example.ODE1, alpha=alpha, p=p, r=r, n_list=(n,), mode=mode, eps=eps, T=T
    )
    _run(state, config, n, None, trace_file, samples_file, points)


@_common
@click.option(
    "--h",
    "h",
    type=flags.NUMBER,
    default="1/64",
    show_default=True,
    help="Spatial mesh width, such as 1/64.",
)
@essentials.command(parent=cli, cls=FracDGCommand)
@click.pass_context
def pde(
    ctx: click.Context,
    alpha: float,
    p: int,
    r: float | None,
    n: int,
    mode: SolveMode,
    eps: float | None,
    T: float,  # noqa: N803
    trace_file: Path | None,
    samples_file: Path | None,
    points: int,
    h: float,
) -> None:
    """Solve the one-dimensional subdiffusion example with linear finite elements."""
    state = ctx.ensure_object(AppState)
    config = RunConfig(
        example=Example.PDE1,
        alpha=alpha,
        p=p,
        r=r,
        n_list=(n,),
        h_list=(h,),
        mode=mode,
        eps=eps,
        T=T,
    )
    _run(state, config, n, h, trace_file, samples_file, points)
