"""Formatters for CLI output."""


def format_error(value: float | None) -> str:
    """Format an error in two-digit scientific notation."""
    return "N/A" if value is None else f"{value:.2e}"


def format_rate(value: float | None) -> str:
    """Format an observed rate, dimmed dash for the first row."""
    return "[dim]-[/dim]" if value is None else f"{value:.2f}"


def format_h(h: float | None) -> str:
    """Format a spatial width as 1/k when it is a unit fraction."""
    if h is None:
        return "-"
    inverse = 1 / h
    return f"1/{round(inverse)}" if abs(inverse - round(inverse)) < 1e-9 else f"{h:g}"


def format_ms(value: float) -> str:
    """Format a wall time in milliseconds."""
    return f"{value:,.1f}"


def format_ratio(value: float) -> str:
    """Format a speed-up ratio, green when the fast solver wins."""
    text = f"{value:.2f}x"
    return f"[green]{text}" if value > 1 else text
