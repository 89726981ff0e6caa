"""Progress bars for service generators and error reporting."""

from __future__ import annotations

from collections.abc import Generator
from typing import TYPE_CHECKING, TypeVar

from fracdg.cli.utils.display import display_error, display_warning
from fracdg.cli.utils.setup import _error_console
from fracdg.core.logging import logger
from fracdg.models.output import BaseMessage, ProgressUpdate, Warning

if TYPE_CHECKING:
    from rich import progress

    from fracdg.exceptions import FracDGError, ToleranceError

R = TypeVar("R")


def get_progress_bar() -> progress.Progress:
    """Progress bar on stderr, hidden when stderr is not a terminal."""
    from rich import progress

    return progress.Progress(
        progress.TextColumn("[progress.description]{task.description}"),
        progress.BarColumn(),
        progress.MofNCompleteColumn(),
        progress.TimeElapsedColumn(),
        console=_error_console,
        disable=not _error_console.is_terminal,
    )


class StageTracker:
    """One progress bar task per service stage, such as a table column."""

    def __init__(self, bar: progress.Progress) -> None:
        """Track stages on ``bar``."""
        self.bar = bar
        self.tasks: dict[str, progress.TaskID] = {}

    def update(self, update: ProgressUpdate) -> None:
        """Create the stage's task on first sight, then move it forward."""
        task = self.tasks.get(update.stage)
        if task is None:
            self.tasks[update.stage] = self.bar.add_task(
                update.description, total=update.total, completed=update.current or 0
            )
            return
        self.bar.update(
            task, total=update.total, completed=update.current, description=update.description
        )


def run_with_progress(job: Generator[BaseMessage, None, R]) -> R:
    """Drive a service generator to completion.

    Progress updates move the bar; warnings are printed above it.

    Returns:
        The value the generator returns.
    """
    bar = get_progress_bar()
    tracker = StageTracker(bar)
    with bar:
        while True:
            try:
                message = next(job)
            except StopIteration as stop:
                return stop.value
            if isinstance(message, ProgressUpdate):
                tracker.update(message)
            elif isinstance(message, Warning):
                display_warning(message, console=bar.console)


def handle_error(error: FracDGError) -> None:
    """Log an error with its traceback and print its message.

    Args:
        error (FracDGError): The error to report.
    """
    logger.info(
        "%s: %s", type(error).__name__, error.message, exc_info=True
    )
    display_error(error.message)


def handle_tolerance_error(error: ToleranceError) -> None:
    """Report a failed reference check with one line per mismatch."""
    handle_error(error)
    for mismatch in error.mismatches:
        display_error(mismatch, tag="  -")
