"""Console objects and per-run initialization of the CLI."""

from __future__ import annotations

from typing import TYPE_CHECKING

from rich.console import Console
from rich.theme import Theme

if TYPE_CHECKING:
    from fracdg.core.app import AppState

THEME = Theme({"repr.number": "cyan", "progress.description": "bold"})

_console = Console(theme=THEME)  # results
_error_console = Console(stderr=True, theme=THEME)  # diagnostics, progress


def initialize_app_state(state: AppState) -> None:
    """Apply --no-color and --debug before a command runs.

    Args:
        state (AppState): Flags parsed by the top-level group.
    """
    from fracdg.cli.utils import logging

    if state.no_color:
        for console in (_console, _error_console):
            console.no_color = True

    logging.setup(state.debug, _error_console)
