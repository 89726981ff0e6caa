"""CLI command comparing fast and direct solves."""

from pathlib import Path

import click

from fracdg.cli.utils import essentials, flags, output
from fracdg.cli.utils.builders import build_table
from fracdg.cli.utils.display import (
    display,
    display_json,
    display_success,
    display_text,
    display_warning,
)
from fracdg.cli.utils.formatters import format_error, format_ms, format_ratio
from fracdg.cli.utils.models import Column, OutputFormat
from fracdg.cli.utils.overrides import FracDGCommand
from fracdg.core.app import AppState
from fracdg.core.logging import logger
from fracdg.models.config import Example

_COLUMNS = [
    Column("n", name="N", justify="right", style="cyan"),
    Column("direct_ms", name="Direct (ms)", formatter=format_ms, justify="right"),
    Column("fast_ms", name="Fast (ms)", formatter=format_ms, justify="right"),
    Column("kernel_ms", name="Kernel (ms)", formatter=format_ms, justify="right", style="dim"),
    Column("ratio", name="Speed-up", formatter=format_ratio, justify="right"),
    Column("q_modes", name="Q", justify="right"),
    Column("max_difference", name="Max diff", formatter=format_error, justify="right"),
    Column("weighted_difference", name="Weighted diff", formatter=format_error, justify="right"),
    Column("predicted_bound", name="Bound", formatter=format_error, justify="right", style="dim"),
]


@flags.alpha()
@flags.degree()
@flags.grading()
@click.option(
    "--N",
    "-N",
    "n_list",
    type=flags.SIZES,
    default="256,512,1024",
    show_default=True,
    help="Increasing mesh sizes.",
)
@flags.accuracy()
@flags.final_time()
@click.option(
    "--example",
    type=click.Choice([e.value for e in Example]),
    default=Example.ODE1.value,
    show_default=True,
    help="Problem to solve.",
)
@click.option("--h", "h", type=flags.NUMBER, default="1/32", show_default=True, help="Spatial width for the PDE example.")
@click.option("--repeats", type=click.IntRange(min=1), default=3, show_default=True, help="Timed runs per solver; the median is reported.")
@click.option(
    "--profile",
    "profile_file",
    type=click.Path(dir_okay=False, writable=True, resolve_path=True, path_type=Path),
    help="Write the per-step differences of the largest N as CSV.",
)
@flags.output("format")
@flags.output_file()
@essentials.command(cls=FracDGCommand)
@click.pass_context
def bench(
    ctx: click.Context,
    alpha: float,
    p: int,
    r: float | None,
    n_list: tuple[int, ...],
    eps: float | None,
    T: float,  # noqa: N803
    example: str,
    h: float,
    repeats: int,
    profile_file: Path | None,
    format: OutputFormat,
    output_file: Path | None,
) -> None:
    """Time fast against direct solves and measure how far they differ.

    The difference is expected to stay below eps * t_N^alpha / t_1^alpha.
    """
    from fracdg.models.config import RunConfig, SolveMode

    state = ctx.ensure_object(AppState)
    config = RunConfig(
        example=Example(example),
        alpha=alpha,
        p=p,
        r=r,
        n_list=n_list,
        h_list=(h,) if example == Example.PDE1 else (),
        mode=SolveMode.FAST,
        eps=eps,
        T=T,
    )
    logger.info("Benchmarking alpha=%g over N=%s", alpha, n_list)
    report = output.run_with_progress(state.app.bench.bench_fast_vs_direct(config, repeats))

    if format == OutputFormat.TABLE:
        if output_file is not None:
            display_warning(
                "Output file specified, but table format does not support file output. "
                "Use --csv, --json or --markdown."
            )
        display(build_table(report.rows, _COLUMNS, title=f"Fast vs direct, alpha = {alpha:g}"))
    else:
        report_format = format.report_format
        if output_file is not None:
            state.app.report.emit_bench(report, report_format, output_file)
            display_success(f"Benchmark written to {output_file}.")
        else:
            text = state.app.report.render_bench(report, report_format)
            if format == OutputFormat.JSON:
                display_json(text)
            else:
                display_text(text)

    if profile_file is not None:
        state.app.report.export_profile(report, profile_file)
        display_success(f"Difference profile written to {profile_file}.")
