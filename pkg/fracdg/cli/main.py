"""The ``fracdg`` command and its lazily imported subcommands."""

import sys

import click

from fracdg.cli.utils import essentials


@essentials.group()
@click.option(
    "--debug",
    "-d",
    is_flag=True,
    envvar=("FRACDG_DEBUG", "DEBUG"),
    help="Log solver diagnostics to the console.",
)
@click.option(
    "--no-color",
    is_flag=True,
    envvar=("FRACDG_NO_COLOR", "NO_COLOR"),
    help="Print without colors.",
)
@click.version_option(None, "--version", "-v", package_name="fracdg", prog_name="FracDG")
@click.pass_context
def cli(ctx: click.Context, debug: bool, no_color: bool) -> None:
    """Fast and direct DG time stepping for time-fractional subdiffusion."""
    if ctx.resilient_parsing:
        return

    from fracdg.cli.utils.setup import initialize_app_state
    from fracdg.core.app import AppState

    state = ctx.ensure_object(AppState)
    state.debug, state.no_color = debug, no_color
    initialize_app_state(state)


LAZY_SUBCOMMANDS = (
    ("soe", essentials.LazyGroup, "cli", "Build and validate sum-of-exponentials kernels."),
    ("solve", essentials.LazyGroup, "cli", "Solve one of the manufactured examples."),
    (
        "table",
        essentials.LazyCommand,
        "table",
        "Reproduce a convergence table (preset t1, t2, t3, t4 or custom).",
    ),
    ("bench", essentials.LazyCommand, "bench", "Compare fast and direct solves in time and accuracy."),
)

for _name, _cls, _attribute, _help in LAZY_SUBCOMMANDS:
    cli.add_command(
        _cls(
            import_name=f"fracdg.cli.{_name}:{_attribute}",
            name=_name,
            help=_help,
            options_metavar="[options]",
            context_settings={"help_option_names": essentials.HELP_OPTIONS},
        )
    )


if __name__ == "__main__":
    sys.exit(cli())
