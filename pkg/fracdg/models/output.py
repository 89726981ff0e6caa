"""Messages yielded by long running services to the CLI."""

from dataclasses import dataclass


@dataclass
class Warning:
    """Something recoverable the user should know, such as a clamped grading exponent."""

    content: str

    def __rich__(self) -> str:
        """Render as the plain message."""
        return self.content


@dataclass
class ProgressUpdate:
    """Progress of one stage of a multi-run job, e.g. a table column.

    ``current`` and ``total`` count runs and are None when unknown.
    """

    stage: str
    description: str
    current: int | None
    total: int | None


BaseMessage = Warning | ProgressUpdate
