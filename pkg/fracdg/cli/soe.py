"""CLI commands for sum-of-exponentials kernels."""

from pathlib import Path

import click

from fracdg.cli.utils import essentials, flags
from fracdg.cli.utils.builders import build_table
from fracdg.cli.utils.display import display, display_success, loading_spinner
from fracdg.cli.utils.models import Column
from fracdg.cli.utils.overrides import FracDGCommand
from fracdg.core.app import AppState
from fracdg.core.logging import logger
from fracdg.models.kernel import SOEKernel


def _summary(kernel: SOEKernel, certified: float) -> list[tuple[str, str]]:
    return [
        ("beta", f"{kernel.beta:g}"),
        ("shift q", str(kernel.q)),
        ("window", f"[{kernel.delta:.3e}, {kernel.horizon:g}]"),
        ("target eps", f"{kernel.eps:.1e}"),
        ("step h", f"{kernel.step_h:.4f}"),
        ("modes Q", str(kernel.Q)),
        ("certified error", f"{certified:.3e}"),
    ]


_COLUMNS = [
    Column("key", name="Property", style="dim", getter=lambda item: item[0]),
    Column("value", name="Value", getter=lambda item: item[1], justify="right"),
]


@essentials.group()
def cli():
    """Group for kernel commands."""


@click.option("--beta", "-b", type=float, required=True, help="Kernel exponent; below 1 unless shifted.")
@click.option("--eps", type=flags.NUMBER, default=1e-10, show_default=True, help="Target relative accuracy.")
@click.option("--delta", type=flags.NUMBER, required=True, help="Lower end of the validity window.")
@click.option("--horizon", "-T", type=flags.NUMBER, default=4.0, show_default=True, help="Upper end of the validity window.")
@click.option(
    "--beta0",
    type=click.FloatRange(0, 1, min_open=True, max_open=True),
    default=None,
    help="Shift the kernel so the exponentials approximate an exponent at most beta0.",
)
@click.option(
    "--output-file",
    "-o",
    type=click.Path(dir_okay=False, writable=True, resolve_path=True, path_type=Path),
    help="Write the kernel as JSON.",
)
@essentials.command(parent=cli, cls=FracDGCommand)
@click.pass_context
def build(
    ctx: click.Context,
    beta: float,
    eps: float,
    delta: float,
    horizon: float,
    beta0: float | None,
    output_file: Path | None,
) -> None:
    """Build and certify a kernel approximating t^(beta-1)/Gamma(beta)."""
    from fracdg.domain import soe_kernel

    state = ctx.ensure_object(AppState)
    logger.debug("Building kernel beta=%g eps=%g on [%g, %g]", beta, eps, delta, horizon)
    with loading_spinner("Building kernel..."):
        if beta0 is None:
            kernel = soe_kernel.build_soe(beta, eps, delta, horizon)
        else:
            kernel = soe_kernel.build_soe_shifted(beta, eps, delta, horizon, beta0)

    display(build_table(_summary(kernel, kernel.certified_error or 0.0), _COLUMNS))
    if output_file is not None:
        state.app.report.dump_kernel(kernel, output_file)
        display_success(f"Kernel written to {output_file}.")


@click.argument(
    "kernel_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    metavar="<kernel_file>",
)
@click.option(
    "--samples",
    type=click.IntRange(min=10),
    default=10_000,
    show_default=True,
    help="Number of geometrically spaced sample points.",
)
@essentials.command(parent=cli, cls=FracDGCommand)
@click.pass_context
def validate(ctx: click.Context, kernel_file: Path, samples: int) -> None:
    """Re-certify a stored kernel against the exact power kernel.

    Exits with status 1 when the sampled error exceeds the kernel's target.
    """
    from fracdg.domain import soe_kernel
    from fracdg.exceptions import CertificationError

    state = ctx.ensure_object(AppState)
    kernel = state.app.report.load_kernel(kernel_file)
    with loading_spinner("Validating kernel..."):
        error = soe_kernel.validate_soe(kernel, samples)

    display(build_table(_summary(kernel, error), _COLUMNS))
    if error > kernel.eps:
        raise CertificationError(error, kernel.eps)
    display_success("Kernel is within its target accuracy.")
