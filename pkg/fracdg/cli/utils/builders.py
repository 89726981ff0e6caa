"""Output builders for CLI commands."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from itertools import groupby
from typing import TYPE_CHECKING, Any

from fracdg.cli.utils.formatters import format_error, format_h, format_rate
from fracdg.cli.utils.models import Column

if TYPE_CHECKING:
    from rich.table import Table

    from fracdg.models.report import ErrorTable


def build_table(items: Iterable[Any], columns: Sequence[Column], **kwargs: Any) -> Table:
    """Build a rich table with one row per item."""
    from rich import box
    from rich.table import Table

    table = Table(header_style="dim", box=box.SIMPLE, **kwargs)
    for column in columns:
        table.add_column(column.name, justify=column.justify, style=column.style)
    for item in items:
        table.add_row(*(column.cell(item) for column in columns))
    return table


def build_error_table(table: ErrorTable) -> Table:
    """Lay out a convergence table with one (error, rate) column pair per grading.

    Rows are mesh sizes, or widths for spatial studies, and each alpha
    starts a new section.
    """
    from rich import box
    from rich.table import Table

    spatial = (
        len({row.h for row in table.rows}) > 1 and len({row.n for row in table.rows}) == 1
    )
    labels = list(dict.fromkeys(row.r_label for row in table.rows))
    rich_table = Table(
        header_style="dim", box=box.SIMPLE, title=table.title, title_style="bold"
    )
    rich_table.add_column("alpha", justify="right", style="cyan")
    rich_table.add_column("h" if spatial else "N", justify="right")
    for label in labels:
        rich_table.add_column(f"r={label}", justify="right")
        rich_table.add_column("rate", justify="right", style="dim")

    for index, (alpha, group) in enumerate(groupby(table.rows, key=lambda row: row.alpha)):
        if index:
            rich_table.add_section()
        rows = list(group)
        cells = {(row.r_label, row.n, row.h): row for row in rows}
        for n, h in dict.fromkeys((row.n, row.h) for row in rows):
            line = [f"{alpha:g}", format_h(h) if spatial else str(n)]
            for label in labels:
                row = cells.get((label, n, h))
                line += (
                    ["", ""] if row is None else [format_error(row.error), format_rate(row.rate)]
                )
            rich_table.add_row(*line)
    return rich_table
