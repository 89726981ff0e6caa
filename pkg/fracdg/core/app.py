"""Per-invocation state shared by the CLI commands."""

from __future__ import annotations

import functools
import warnings
from typing import TYPE_CHECKING

from attrs import define, field

from fracdg.core.logging import logger

if TYPE_CHECKING:
    from fracdg.services.bench_service import BenchService
    from fracdg.services.convergence_service import ConvergenceService
    from fracdg.services.report_service import ReportService


class Application:
    """Services behind the commands, each created on first use.

    Creating a service imports numpy and scipy, so commands that only print
    help or a version never pay for them.
    """

    def __init__(self, show_warnings: bool = False) -> None:
        """Create the container; ``show_warnings`` surfaces numpy warnings once each."""
        if show_warnings:
            warnings.simplefilter("default")

    @functools.cached_property
    def convergence(self) -> ConvergenceService:
        """Single solves and convergence tables."""
        from fracdg.services.convergence_service import ConvergenceService

        logger.debug("Creating convergence service")
        return ConvergenceService()

    @functools.cached_property
    def bench(self) -> BenchService:
        """Fast versus direct timings."""
        from fracdg.services.bench_service import BenchService

        logger.debug("Creating bench service")
        return BenchService()

    @functools.cached_property
    def report(self) -> ReportService:
        """Rendering and writing of results."""
        from fracdg.services.report_service import ReportService

        return ReportService()


@define
class AppState:
    """Top-level flags and the lazily built application."""

    debug: bool = False
    no_color: bool = False
    _app: Application | None = field(default=None, init=False, repr=False)

    @property
    def app(self) -> Application:
        """The application, built with the current debug flag on first access."""
        if self._app is None:
            self._app = Application(show_warnings=self.debug)
        return self._app
