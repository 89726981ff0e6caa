"""Overrides for common click classes."""

import click

from fracdg.exceptions import FracDGError, ToleranceError


class FracDGCommand(click.Command):
    """Click command that turns FracDG errors into an error line and exit status 1."""

    def invoke(self, ctx):
        """Invoke the command with error handling."""
        try:
            return super().invoke(ctx)
        except ToleranceError as e:
            from fracdg.cli.utils import output

            output.handle_tolerance_error(e)
            ctx.exit(1)
        except FracDGError as e:
            from fracdg.cli.utils import output

            output.handle_error(e)
            ctx.exit(1)
