"""Tests for CLI error handling in FracDGCommand."""

from unittest.mock import patch

import click
import pytest

from fracdg.cli.utils.overrides import FracDGCommand
from fracdg.exceptions import (
    CertificationError,
    FracDGError,
    InvalidInputError,
    OutputError,
    SolverError,
    ToleranceError,
)


def _make_command(exception):
    """Create a FracDGCommand that raises the given exception."""

    @click.command(cls=FracDGCommand)
    def cmd():
        raise exception

    return cmd


class TestFracDGCommandErrorHandling:
    """Tests for FracDGCommand exception catching."""

    @pytest.mark.parametrize(
        "error",
        [
            FracDGError("base error"),
            InvalidInputError(0.0, "bad alpha"),
            SolverError(3),
            CertificationError(1e-6, 1e-8),
            OutputError("out.csv"),
        ],
    )
    def test_catches_fracdg_errors(self, runner, error):
        """FracDG errors are caught and result in exit code 1."""
        with patch("fracdg.cli.utils.output.handle_error") as mock_handle_error:
            result = runner.invoke(_make_command(error))
        assert result.exit_code == 1
        mock_handle_error.assert_called_once_with(error)

    def test_tolerance_error_lists_mismatches(self, runner):
        """Reference mismatches are printed one per line."""
        error = ToleranceError(["alpha=0.5: rate 1.20", "alpha=0.8: rate 1.30"])
        result = runner.invoke(_make_command(error))
        assert result.exit_code == 1
        assert "2 result(s) outside reference tolerance." in result.output
        assert "alpha=0.5: rate 1.20" in result.output
        assert "alpha=0.8: rate 1.30" in result.output

    def test_other_errors_propagate(self, runner):
        """Non-FracDG exceptions are not caught."""
        result = runner.invoke(_make_command(ValueError("unexpected")))
        assert result.exit_code == 1
        assert isinstance(result.exception, ValueError)

    def test_error_message_shown(self, runner):
        """The message reaches the error console."""
        result = runner.invoke(_make_command(FracDGError("visible message")))
        assert "Error:" in result.output
        assert "visible message" in result.output
