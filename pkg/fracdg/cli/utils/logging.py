"""Log handlers of the FracDG CLI."""

from __future__ import annotations

from logging import DEBUG, INFO, WARNING, Filter, Formatter, LogRecord
from typing import TYPE_CHECKING

from fracdg.core import logging

if TYPE_CHECKING:
    from pathlib import Path

    from rich.console import Console

LOG_FORMAT = "%(asctime)s :: %(name)-12s :: %(levelname)-8s :: %(message)s"
MAX_BYTES = 1_000_000
BACKUPS = 3


class TracebackInfoFilter(Filter):
    """Keep tracebacks in the log file but out of the console."""

    def filter(self, record: LogRecord) -> bool:
        """Strip exception info from the record."""
        # The file handler runs first and has already formatted the traceback.
        record.exc_info = None
        record.exc_text = None
        return True


def log_file() -> Path:
    """Location of the rotating log file."""
    import platformdirs

    return (platformdirs.user_log_path("fracdg", ensure_exists=True) / "fracdg.log").resolve()


def setup(debug: bool, console: Console) -> None:
    """Log to a rotating file and to ``console``.

    The file gets INFO and above, the console WARNING and above; ``debug``
    lowers both by one level.
    """
    from logging.handlers import RotatingFileHandler

    from rich.logging import RichHandler

    path = log_file()
    file_handler = RotatingFileHandler(path, maxBytes=MAX_BYTES, backupCount=BACKUPS)
    file_handler.setFormatter(Formatter(fmt=LOG_FORMAT))
    file_handler.setLevel(DEBUG if debug else INFO)

    console_handler = RichHandler(
        level=INFO if debug else WARNING,
        console=console,
        show_path=False,
        show_time=debug,
        log_time_format="[%H:%M:%S]",
        rich_tracebacks=True,
    )
    if not debug:
        console_handler.addFilter(TracebackInfoFilter())

    logging.setup(file_handler, console_handler)
    if debug:
        import numpy
        import scipy

        logging.logger.info("Logging to file: %s", path.as_posix())
        logging.logger.debug("numpy %s, scipy %s", numpy.__version__, scipy.__version__)
