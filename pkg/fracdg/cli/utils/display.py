"""Rich printing helpers for the CLI.

Results go to stdout; warnings, errors, spinners and progress go to stderr
so piped CSV or JSON stays clean.
"""

from __future__ import annotations

from collections.abc import Generator
from contextlib import contextmanager
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from rich.console import Console


def _resolve(console: Console | None, stderr: bool = False) -> Console:
    if console is not None:
        return console
    from fracdg.cli.utils import setup

    return setup._error_console if stderr else setup._console


def display(*objects: object, console: Console | None = None, style: str | None = None) -> None:
    """Print rich renderables or markup strings."""
    _resolve(console).print(*objects, style=style)


def display_json(
    json: str | None = None, *, data: Any | None = None, console: Console | None = None
) -> None:
    """Pretty-print a JSON document or a JSON-compatible object."""
    _resolve(console).print_json(json, data=data)


def display_text(text: str, console: Console | None = None) -> None:
    """Print CSV or markdown verbatim, with no markup, highlighting or wrapping."""
    _resolve(console).print(text, markup=False, highlight=False, soft_wrap=True)


def display_success(message: str, console: Console | None = None) -> None:
    """Print a green confirmation line."""
    display(message, console=console, style="green")


def display_warning(*objects: object, console: Console | None = None) -> None:
    """Print a warning line on stderr."""
    display("[bold yellow]Warning:[/bold yellow]", *objects, console=_resolve(console, stderr=True))


def display_error(*objects: object, tag: str = "Error:", console: Console | None = None) -> None:
    """Print an error line on stderr, prefixed by ``tag``."""
    display(f"[bold red]{tag}[/bold red]", *objects, console=_resolve(console, stderr=True))


@contextmanager
def loading_spinner(message: str, console: Console | None = None) -> Generator[None, None, None]:
    """Show a spinner on stderr while a single solve or kernel build runs."""
    console = _resolve(console, stderr=True)
    if not console.is_terminal:
        yield
        return
    with console.status(message, spinner="dots"):
        yield
