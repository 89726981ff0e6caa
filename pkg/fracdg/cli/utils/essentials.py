"""Command factories and lazily imported commands for the FracDG CLI.

The numerical subcommands import numpy and scipy, so ``fracdg --help`` and
``fracdg --version`` only resolve them when a subcommand actually runs.
"""

from collections.abc import Callable
from functools import cached_property
from importlib import import_module
from typing import Any

import click

from fracdg.exceptions import FracDGError

HELP_OPTIONS = ["-h", "--help"]
HELP_WIDTH = 100


class _Deferred:
    """Resolve ``module:attribute`` to the real click object on first access."""

    def __init__(self, import_name: str, **kwargs) -> None:
        self._import_name = import_name
        super().__init__(**kwargs)

    @cached_property
    def _impl(self) -> click.Command:
        module, attribute = self._import_name.split(":", 1)
        return getattr(import_module(module), attribute)

    def get_usage(self, ctx):
        """Usage line of the imported command."""
        return self._impl.get_usage(ctx)

    def get_params(self, ctx):
        """Parameters of the imported command."""
        return self._impl.get_params(ctx)


class LazyCommand(_Deferred, click.Command):
    """A command whose implementation lives in another module."""

    def invoke(self, ctx):
        """Run the imported command, reporting FracDG errors with exit status 1."""
        try:
            return self._impl.invoke(ctx)
        except FracDGError as e:
            from fracdg.cli.utils import output

            output.handle_error(e)
            ctx.exit(1)


class LazyGroup(_Deferred, click.Group):
    """A group whose subcommands live in another module."""

    def get_command(self, ctx, cmd_name):
        """Look a subcommand up in the imported group."""
        return self._impl.get_command(ctx, cmd_name)

    def list_commands(self, ctx):
        """Names of the imported group's subcommands."""
        return self._impl.list_commands(ctx)

    def invoke(self, ctx):
        """Dispatch through the imported group."""
        return self._impl.invoke(ctx)


_AnyCallable = Callable[..., Any]


def _with_defaults(kwargs: dict[str, Any]) -> dict[str, Any]:
    settings = kwargs.setdefault("context_settings", {})
    settings.setdefault("help_option_names", HELP_OPTIONS)
    settings.setdefault("max_content_width", HELP_WIDTH)
    kwargs.setdefault("options_metavar", "[options]")
    return kwargs


def command(
    name: str | None = None,
    cls: type[click.Command] | None = None,
    parent: click.Group | None = None,
    **kwargs,
) -> Callable[[_AnyCallable], click.Command]:
    """Create a command, attached to ``parent`` when given."""
    kwargs = _with_defaults(kwargs)
    factory = click.command if parent is None else parent.command
    return factory(name, cls, **kwargs)


def group(
    name: str | None = None,
    cls: type[click.Group] | None = None,
    parent: click.Group | None = None,
    **kwargs,
) -> Callable[[_AnyCallable], click.Group]:
    """Create a group, attached to ``parent`` when given."""
    kwargs = _with_defaults(kwargs)
    kwargs.setdefault("subcommand_metavar", "<command>")
    factory = click.group if parent is None else parent.group
    return factory(name, cls=cls, **kwargs)
