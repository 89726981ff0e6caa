"""CLI command reproducing the convergence tables."""

from pathlib import Path

import click

from fracdg.cli.utils import essentials, flags, output
from fracdg.cli.utils.builders import build_error_table
from fracdg.cli.utils.display import (
    display,
    display_json,
    display_text,
    display_success,
    display_warning,
)
from fracdg.cli.utils.models import OutputFormat
from fracdg.cli.utils.overrides import FracDGCommand
from fracdg.core.app import AppState
from fracdg.core.logging import logger
from fracdg.models.config import Example, SolveMode
from fracdg.models.report import ReportFormat

PRESET_NAMES = ("t1", "t2", "t3", "t4", "custom")


@click.argument("preset", type=click.Choice(PRESET_NAMES), metavar="<preset>")
@click.option("--alpha", "-a", "alphas", type=flags.ALPHAS, help="Fractional orders to run.")
@click.option("--r", "-r", "rs", type=flags.GRADINGS, help="Grading exponents; 'opt' is the optimal grading.")
@click.option("--N", "-N", "n_list", type=flags.SIZES, help="Increasing mesh sizes.")
@click.option("--h", "h_list", type=flags.WIDTHS, help="Decreasing spatial widths, such as 1/4,1/8.")
@flags.mode(default=None)
@flags.accuracy(default=None)
@click.option(
    "--example",
    type=click.Choice([e.value for e in Example]),
    default=Example.ODE1.value,
    show_default=True,
    help="Problem solved by the custom preset.",
)
@flags.degree()
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Run a single JSON configuration instead of a preset.",
)
@click.option(
    "--check",
    is_flag=True,
    help="Compare rates with the published values and exit with status 1 on any mismatch.",
)
@click.option(
    "--check-errors",
    is_flag=True,
    help="With --check, also compare errors within 5% of the published values.",
)
@flags.output("format")
@flags.output_file()
@essentials.command(cls=FracDGCommand)
@click.pass_context
def table(
    ctx: click.Context,
    preset: str,
    alphas: tuple[float, ...] | None,
    rs: tuple[float | None, ...] | None,
    n_list: tuple[int, ...] | None,
    h_list: tuple[float, ...] | None,
    mode: SolveMode | None,
    eps: float | None,
    example: str,
    p: int,
    config_file: Path | None,
    check: bool,
    check_errors: bool,
    format: OutputFormat,
    output_file: Path | None,
) -> None:
    """Run a convergence table and print or save it.

    Presets t1 to t4 reproduce the published tables; the flags narrow them
    down, for example --alpha 0.5 --N 32,64. The custom preset builds a
    table from the flags alone.
    """
    from fracdg.models.config import TablePreset
    from fracdg.services.reference_tables import ERROR_TOLERANCE, check_table

    state = ctx.ensure_object(AppState)
    service = state.app.convergence

    if config_file is not None:
        config = service.load_config(config_file)
        logger.info("Running configuration from %s", config_file)
        result = output.run_with_progress(service.run_config(config))
        rate_tolerance = 0.1
        if output_file is None and config.output is not None:
            state.app.report.emit(result, ReportFormat.from_path(config.output), config.output)
            display_success(f"Table written to {config.output}.")
    else:
        if preset == "custom":
            spec = TablePreset(
                name="custom",
                title=f"Average errors, {example}, p = {p}",
                example=Example(example),
                p=p,
            )
        else:
            spec = service.get_preset(preset)
        spec = service.with_overrides(
            spec,
            alphas=alphas,
            rs=rs,
            n_list=n_list,
            h_list=h_list,
            mode=mode,
            eps=eps,
        )
        logger.info("Running table %s with %d columns", spec.name, len(spec.configs()))
        result = output.run_with_progress(service.run_table(spec))
        rate_tolerance = spec.rate_tolerance

    if format == OutputFormat.TABLE:
        if output_file is not None:
            logger.warning("Table output does not support --output-file; ignoring it.")
            display_warning(
                "Output file specified, but table format does not support file output. "
                "Use --csv, --json or --markdown."
            )
        display(build_error_table(result))
    else:
        report_format = format.report_format
        if output_file is not None:
            state.app.report.emit(result, report_format, output_file)
            display_success(f"Table written to {output_file}.")
        else:
            text = state.app.report.render(result, report_format)
            if format == OutputFormat.JSON:
                display_json(text)
            else:
                display_text(text)

    if check:
        error_tolerance = ERROR_TOLERANCE if check_errors else None
        compared = check_table(result, preset, rate_tolerance, error_tolerance)
        display_success(f"All {compared} rows within the reference tolerance.")
