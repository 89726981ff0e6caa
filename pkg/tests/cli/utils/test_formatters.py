"""Tests for CLI formatters and table builders."""

import pytest
from rich.console import Console

from fracdg.cli.utils import formatters
from fracdg.cli.utils.builders import build_error_table
from fracdg.models.config import Example, SolveMode
from fracdg.models.report import ErrorRow, ErrorTable


class TestFormatters:
    """Tests for the cell formatters."""

    def test_format_error(self):
        """Errors use two digits."""
        assert formatters.format_error(1.234e-5) == "1.23e-05"
        assert formatters.format_error(None) == "N/A"

    def test_format_rate(self):
        """The first row has no rate."""
        assert formatters.format_rate(1.956) == "1.96"
        assert "-" in formatters.format_rate(None)

    @pytest.mark.parametrize(("h", "expected"), [(0.25, "1/4"), (1 / 256, "1/256"), (0.3, "0.3"), (None, "-")])
    def test_format_h(self, h, expected):
        """Unit fractions print as 1/k."""
        assert formatters.format_h(h) == expected

    def test_format_ms(self):
        """Times have thousands separators."""
        assert formatters.format_ms(12345.67) == "12,345.7"

    def test_format_ratio(self):
        """Speed-ups above 1 are highlighted."""
        assert formatters.format_ratio(2.0) == "[green]2.00x"
        assert formatters.format_ratio(0.5) == "0.50x"


def test_build_error_table():
    """Each alpha becomes a section and each grading a column pair."""
    rows = tuple(
        ErrorRow(alpha=alpha, r_label=label, r=1.0, n=n, h=None, error=1e-3 / n, rate=None, wall_time_ms=1.0)
        for alpha in (0.2, 0.8)
        for label in ("1", "opt")
        for n in (8, 16)
    )
    table = ErrorTable(title="Demo", example=Example.ODE1, p=1, mode=SolveMode.DIRECT, rows=rows)
    rich_table = build_error_table(table)
    assert [column.header for column in rich_table.columns] == ["alpha", "N", "r=1", "rate", "r=opt", "rate"]
    assert rich_table.row_count == 4

    console = Console(width=120, record=True)
    console.print(rich_table)
    text = console.export_text()
    assert "Demo" in text
    assert "1.25e-04" in text
