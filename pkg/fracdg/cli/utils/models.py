"""Output options and column specifications for CLI tables."""

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum, auto
from typing import Any, Literal

from fracdg.models.report import ReportFormat


class OutputFormat(StrEnum):
    """Formats a command can print or write."""

    TABLE = auto()
    CSV = auto()
    JSON = auto()
    MARKDOWN = auto()

    @property
    def report_format(self) -> ReportFormat:
        """The file format of this output; tables have none."""
        if self is OutputFormat.TABLE:
            raise ValueError("Rich tables are printed only.")
        return ReportFormat(self.value)


@dataclass(slots=True, frozen=True)
class Column:
    """A column of a rich table built from row objects.

    Attributes:
        key: Attribute read from each row when no getter is given.
        name: Header text; defaults to the key in title case.
        style: Rich style of the column cells.
        getter: Extracts the cell value from a row.
        formatter: Turns the cell value into text.
        justify: Cell alignment.
    """

    key: str
    name: str = ""
    style: str = ""
    getter: Callable[[Any], Any] | None = None
    formatter: Callable[[Any], str] = str
    justify: Literal["default", "left", "center", "right", "full"] = "left"

    def __post_init__(self):
        """Derive the header from the key."""
        if not self.name:
            object.__setattr__(self, "name", self.key.replace("_", " ").title())

    def cell(self, row: Any) -> str:
        """Formatted cell text for ``row``."""
        value = self.getter(row) if self.getter is not None else getattr(row, self.key, None)
        return self.formatter(value)
