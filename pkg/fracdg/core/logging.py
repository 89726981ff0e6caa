"""Logging setup for fracdg.

Logging Strategy
================

FracDG uses a central ``fracdg`` logger with two handlers configured in
``cli/utils/logging.py``: a RotatingFileHandler (1 MB, 3 backups) and a
RichHandler for console output.  The ``--debug`` flag toggles between normal
mode (file=INFO, console=WARNING) and debug mode (file=DEBUG, console=INFO).

Level Guidelines:
    CRITICAL: The process cannot continue at all (corrupt installation,
        unusable output directory).
    ERROR: A solve, table cell or kernel build failed and the command stops.
    WARNING: Unexpected but recoverable situations: an optimal grading
        exponent clamped to 1, a kernel that needed extra step refinement,
        an ignored output flag.
    INFO: Significant operations completing successfully: kernel built and
        certified, solve finished, table cell finished, file written.
    DEBUG: Diagnostic detail: truncation indices, panel counts, per-step
        timings and residual checks.

Principles:
    * User-facing output goes through Rich helpers (``display_success``,
      ``display_error``); logging is strictly for diagnostics.
    * Log at solver and service boundaries, never inside the time loop's
      inner reductions.
    * Log all file output unconditionally at INFO.
    * Models should never log; keep them pure data containers.
    * Use ``%s``-style formatting (``logger.info("Built %s modes", q)``)
      so formatting is deferred until the message is actually emitted.
"""

import logging

logger = logging.getLogger("fracdg")
warnings_logger = logging.getLogger("py.warnings")

_installed: list[logging.Handler] = []


def setup(*handlers: logging.Handler) -> None:
    """Attach handlers to the fracdg and warnings loggers.

    Handlers from an earlier call are detached and closed first, so a
    process running several commands logs each record once.
    """
    logger.setLevel(logging.DEBUG)
    logging.captureWarnings(True)
    for handler in _installed:
        logger.removeHandler(handler)
        warnings_logger.removeHandler(handler)
        handler.close()
    _installed[:] = handlers
    for handler in handlers:
        logger.addHandler(handler)
        warnings_logger.addHandler(handler)
