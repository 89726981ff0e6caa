"""Common flags and parameter types for CLI commands."""

import functools
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path
from typing import Any, TypeVar

import click

from fracdg.cli.utils.models import OutputFormat

_AnyCallable = Callable[..., Any]
FC = TypeVar("FC", bound="_AnyCallable | click.Command")

_AUTO_VALUES = ("opt", "optimal", "auto")


class NumberType(click.ParamType):
    """A positive number, written as a decimal or as a fraction like ``1/64``."""

    name = "number"

    def convert(self, value, param, ctx):
        """Convert the value to float."""
        if isinstance(value, int | float):
            return float(value)
        try:
            number = float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a number or fraction.", param, ctx)
        if number <= 0:
            self.fail(f"{value!r} must be positive.", param, ctx)
        return number


class OptionalNumberType(NumberType):
    """A positive number, or a keyword selecting the automatic choice (None)."""

    def __init__(self, keyword: str) -> None:
        """Initialize with the keyword shown in help."""
        self.keyword = keyword
        self.name = f"number|{keyword}"

    def convert(self, value, param, ctx):
        """Convert the value to float, or None for the keyword."""
        if value is None or (isinstance(value, str) and value.strip().lower() in _AUTO_VALUES):
            return None
        return super().convert(value, param, ctx)


class ListType(click.ParamType):
    """A comma separated list of values converted by an item type."""

    def __init__(self, item: click.ParamType, name: str) -> None:
        """Initialize with the item converter."""
        self.item = item
        self.name = name

    def convert(self, value, param, ctx):
        """Convert the value to a tuple of items."""
        if isinstance(value, tuple | list):
            return tuple(value)
        parts = [part for part in value.split(",") if part.strip()]
        if not parts:
            self.fail("Expected at least one value.", param, ctx)
        return tuple(self.item.convert(part.strip(), param, ctx) for part in parts)


NUMBER = NumberType()
GRADING = OptionalNumberType("opt")
ACCURACY = OptionalNumberType("auto")
SIZES = ListType(click.IntRange(min=1), "N[,N...]")
WIDTHS = ListType(NUMBER, "h[,h...]")
ALPHAS = ListType(click.FloatRange(0, 1, min_open=True, max_open=True), "alpha[,alpha...]")
GRADINGS = ListType(GRADING, "r[,r...]")


def output(
    name: str = "format", allowed: list[OutputFormat] | None = None
) -> Callable[[FC], FC]:
    """Common output option for CLI commands."""
    options = []
    for fmt in (OutputFormat.CSV, OutputFormat.JSON, OutputFormat.MARKDOWN):
        if allowed is None or fmt in allowed:
            options.append(
                click.option(f"--{fmt.value}", name, flag_value=fmt, help=f"Output as {fmt.value}.")
            )
    if allowed is None or OutputFormat.TABLE in allowed:
        options.append(
            click.option(
                "--table",
                name,
                flag_value=OutputFormat.TABLE,
                default=True,
                hidden=True,
            )
        )
    return functools.partial(functools.reduce, lambda x, opt: opt(x), options)


def output_file() -> Callable[[FC], FC]:
    """Common output-file option for CLI commands."""
    return click.option(
        "--output-file",
        "-o",
        type=click.Path(dir_okay=False, writable=True, resolve_path=True, path_type=Path),
        help="Path to save the output file (when using --csv/--json/--markdown).",
    )


def alpha(default: float = 0.5) -> Callable[[FC], FC]:
    """Fractional order option."""
    return click.option(
        "--alpha",
        "-a",
        type=click.FloatRange(0, 1, min_open=True, max_open=True),
        default=default,
        show_default=True,
        help="Fractional order in (0, 1).",
    )


def degree() -> Callable[[FC], FC]:
    """Temporal polynomial degree option."""
    return click.option(
        "--p",
        "-p",
        "p",
        type=click.IntRange(1, 2),
        default=1,
        show_default=True,
        help="Temporal polynomial degree.",
    )


def grading() -> Callable[[FC], FC]:
    """Grading exponent option."""
    return click.option(
        "--r",
        "-r",
        "r",
        type=GRADING,
        default="opt",
        show_default=True,
        help="Grading exponent r >= 1, or 'opt' for the optimal grading.",
    )


def mode(default: str | None = "direct") -> Callable[[FC], FC]:
    """History evaluation mode option."""
    from fracdg.models.config import SolveMode

    return click.option(
        "--mode",
        "-m",
        type=click.Choice([m.value for m in SolveMode]),
        default=default,
        show_default=default is not None,
        help="Evaluate the history directly or with the fast kernel.",
        callback=lambda ctx, param, value: None if value is None else SolveMode(value),
    )


def accuracy(default: str | None = "auto") -> Callable[[FC], FC]:
    """Kernel accuracy option."""
    return click.option(
        "--eps",
        type=ACCURACY,
        default=default,
        show_default=default is not None,
        help="Kernel accuracy for fast solves, or 'auto' to choose it from the mesh.",
    )


def final_time() -> Callable[[FC], FC]:
    """Final time option."""
    return click.option(
        "--T",
        "-T",
        "T",
        type=NUMBER,
        default=4.0,
        show_default=True,
        help="Final time.",
    )
