"""Published reference values of the convergence tables and the tolerance check.

Values are (error, rate) per mesh row, keyed by preset, alpha and grading
column label. Rates of the first row are None.
"""

import math

from fracdg.exceptions import InvalidInputError, ToleranceError
from fracdg.models.report import ErrorRow, ErrorTable

ERROR_TOLERANCE = 0.05
"""Relative deviation allowed when published errors are compared as well."""

Entry = tuple[float, float | None]


def _column(errors: str, rates: str) -> tuple[Entry, ...]:
    values = [float(e) for e in errors.split()]
    slopes: list[float | None] = [None, *(float(r) for r in rates.split())]
    return tuple(zip(values, slopes, strict=True))


REFERENCE: dict[str, dict[float, dict[str, tuple[Entry, ...]]]] = {
    "t1": {
        0.2: {
            "1": _column("1.67e-02 9.67e-03 5.56e-03 3.18e-03 1.81e-03", "0.79 0.80 0.81 0.81"),
            "1.2": _column("9.66e-03 4.97e-03 2.53e-03 1.28e-03 6.45e-04", "0.96 0.97 0.98 0.99"),
            "1.6": _column("3.26e-03 1.32e-03 5.28e-04 2.08e-04 8.15e-05", "1.30 1.32 1.34 1.35"),
            "opt": _column("4.21e-04 1.18e-04 3.24e-05 8.80e-06 2.36e-06", "1.84 1.86 1.88 1.90"),
            "3.5": _column("4.41e-04 1.24e-04 3.42e-05 9.29e-06 2.50e-06", "1.83 1.86 1.88 1.89"),
        },
        0.5: {
            "1": _column("7.32e-03 3.03e-03 1.23e-03 4.88e-04 1.91e-04", "1.27 1.30 1.33 1.35"),
            "1.2": _column("3.24e-03 1.11e-03 3.74e-04 1.23e-04 3.99e-05", "1.54 1.57 1.60 1.63"),
            "1.6": _column("9.12e-04 2.46e-04 6.52e-05 1.70e-05 4.39e-06", "1.89 1.92 1.94 1.95"),
            "opt": _column("5.80e-04 1.52e-04 3.93e-05 1.01e-05 2.56e-06", "1.93 1.95 1.96 1.97"),
            "3.5": _column("8.37e-04 2.21e-04 5.75e-05 1.48e-05 3.79e-06", "1.92 1.94 1.96 1.97"),
        },
        0.8: {
            "1": _column("1.28e-03 4.32e-04 1.41e-04 4.51e-05 1.41e-05", "1.56 1.61 1.65 1.68"),
            "1.2": _column("5.73e-04 1.57e-04 4.24e-05 1.13e-05 3.00e-06", "1.87 1.89 1.90 1.92"),
            "1.6": _column("6.03e-04 1.54e-04 3.89e-05 9.79e-06 2.46e-06", "1.97 1.98 1.99 1.99"),
            "opt": _column("7.03e-04 1.79e-04 4.53e-05 1.14e-05 2.87e-06", "1.97 1.98 1.99 1.99"),
            "3.5": _column("2.15e-03 5.47e-04 1.39e-04 3.50e-05 8.80e-06", "1.97 1.98 1.99 1.99"),
        },
    },
    "t2": {
        0.2: {
            "2": _column("6.98e-04 2.86e-04 1.15e-04 4.62e-05 1.83e-05", "1.29 1.31 1.32 1.34"),
            "2.2": _column("4.11e-04 1.53e-04 5.61e-05 2.03e-05 7.29e-06", "1.42 1.45 1.47 1.48"),
            "2.5": _column("2.01e-04 6.45e-05 2.03e-05 6.32e-06 1.94e-06", "1.64 1.67 1.69 1.70"),
            "opt": _column("2.75e-05 3.98e-06 5.54e-07 7.54e-08 1.01e-08", "2.79 2.84 2.88 2.90"),
            "5": _column("2.81e-05 4.06e-06 5.63e-07 7.65e-08 1.02e-08", "2.79 2.85 2.88 2.90"),
        },
        0.5: {
            "2": _column("2.33e-04 7.37e-05 2.23e-05 6.55e-06 1.87e-06", "1.66 1.72 1.77 1.81"),
            "2.2": _column("1.16e-04 3.19e-05 8.39e-06 2.13e-06 5.27e-07", "1.86 1.93 1.98 2.02"),
            "2.5": _column("4.31e-05 9.61e-06 2.03e-06 4.12e-07 8.16e-08", "2.17 2.24 2.30 2.34"),
            "opt": _column("5.81e-06 8.62e-07 1.21e-07 1.65e-08 2.19e-09", "2.75 2.83 2.88 2.91"),
            "5": _column("6.13e-06 1.05e-06 1.66e-07 2.43e-08 3.38e-09", "2.54 2.66 2.77 2.85"),
        },
        0.8: {
            "2": _column("4.04e-05 1.11e-05 2.91e-06 7.47e-07 1.89e-07", "1.87 1.93 1.96 1.98"),
            "2.2": _column("1.72e-05 4.09e-06 9.28e-07 2.06e-07 4.53e-08", "2.08 2.14 2.17 2.19"),
            "2.5": _column("4.86e-06 9.25e-07 1.69e-07 3.01e-08 5.34e-09", "2.39 2.46 2.48 2.50"),
            "opt": _column("1.76e-06 2.39e-07 3.15e-08 4.11e-09 5.33e-10", "2.88 2.92 2.94 2.95"),
            "5": _column("6.77e-06 9.03e-07 1.17e-07 1.50e-08 1.89e-09", "2.91 2.95 2.97 2.98"),
        },
    },
    "t3": {
        0.2: {
            "1": _column("1.94e-01 1.14e-01 6.68e-02 3.93e-02 2.32e-02", "0.77 0.77 0.76 0.76"),
            "1.2": _column("1.32e-01 7.00e-02 3.71e-02 1.97e-02 1.05e-02", "0.92 0.92 0.91 0.91"),
            "1.6": _column("6.14e-02 2.65e-02 1.15e-02 4.97e-03 2.16e-03", "1.21 1.21 1.21 1.21"),
            "opt": _column("6.79e-03 1.54e-03 3.56e-04 8.37e-05 2.00e-05", "2.14 2.11 2.09 2.06"),
            "3.5": _column("6.12e-03 1.39e-03 3.29e-04 7.98e-05 1.96e-05", "2.13 2.08 2.05 2.02"),
        },
        0.5: {
            "1": _column("4.69e-02 2.12e-02 9.50e-03 4.20e-03 1.82e-03", "1.15 1.16 1.18 1.21"),
            "1.2": _column("2.46e-02 9.47e-03 3.57e-03 1.30e-03 4.61e-04", "1.38 1.41 1.45 1.50"),
            "1.6": _column("6.83e-03 1.90e-03 5.06e-04 1.30e-04 3.25e-05", "1.85 1.91 1.96 2.00"),
            "opt": _column("1.78e-03 4.40e-04 1.08e-04 2.69e-05 6.68e-06", "2.02 2.02 2.01 2.01"),
            "3.5": _column("2.20e-03 5.66e-04 1.44e-04 3.62e-05 9.09e-06", "1.96 1.98 1.99 1.99"),
        },
        0.8: {
            "1": _column("1.17e-02 3.76e-03 1.12e-03 3.16e-04 8.51e-05", "1.64 1.74 1.83 1.89"),
            "1.2": _column("4.74e-03 1.15e-03 2.53e-04 5.15e-05 1.04e-05", "2.04 2.19 2.30 2.31"),
            "1.6": _column("1.22e-03 2.60e-04 6.23e-05 1.57e-05 3.97e-06", "2.23 2.06 1.99 1.98"),
            "opt": _column("1.15e-03 2.81e-04 7.09e-05 1.79e-05 4.51e-06", "2.03 1.99 1.99 1.99"),
            "3.5": _column("3.16e-03 8.44e-04 2.19e-04 5.59e-05 1.42e-05", "1.90 1.95 1.97 1.98"),
        },
    },
}


def _spatial(errors: str, rates: str) -> dict[str, tuple[Entry, ...]]:
    column = _column(errors, rates)
    return {label: column for label in ("1", "1.2", "1.6", "opt", "3.5")}


REFERENCE["t4"] = {
    0.2: {
        **_spatial("4.04e-01 1.24e-01 3.26e-02 8.23e-03 2.06e-03", "1.70 1.93 1.98 2.00"),
        "1": _column("4.04e-01 1.24e-01 3.26e-02 8.35e-03 2.48e-03", "1.70 1.93 1.97 1.75"),
        "1.2": _column("4.04e-01 1.24e-01 3.26e-02 8.24e-03 2.09e-03", "1.70 1.93 1.98 1.98"),
    },
    0.5: _spatial("3.41e-01 1.05e-01 2.73e-02 6.91e-03 1.73e-03", "1.71 1.93 1.98 2.00"),
    0.8: _spatial("2.87e-01 8.69e-02 2.27e-02 5.72e-03 1.43e-03", "1.72 1.94 1.99 2.00"),
}


REFERENCE_SIZES = (32, 64, 128, 256, 512)
"""Mesh sizes N of the rows of the temporal tables."""

REFERENCE_WIDTHS = (1 / 4, 1 / 8, 1 / 16, 1 / 32, 1 / 64)
"""Spatial widths h of the rows of the spatial table t4."""


def _row_index(preset: str, row: ErrorRow) -> int | None:
    """Position of the published row with the same mesh size, if any."""
    if preset == "t4":
        if row.h is None:
            return None
        matches = [i for i, h in enumerate(REFERENCE_WIDTHS) if math.isclose(h, row.h)]
        return matches[0] if matches else None
    return REFERENCE_SIZES.index(row.n) if row.n in REFERENCE_SIZES else None


def check_table(
    table: ErrorTable,
    preset: str,
    rate_tolerance: float = 0.1,
    error_tolerance: float | None = None,
) -> int:
    """Compare a computed table with the published values.

    Rows are matched to the published ones by mesh size, N for t1 to t3 and
    h for t4. A rate is compared when the row before it in its (alpha,
    column) group is the published predecessor. Errors are compared only
    when ``error_tolerance`` is given, as a relative deviation. Columns
    without a reference value are skipped.

    Returns:
        Number of rows matched to a published row.

    Raises:
        InvalidInputError: If the preset has no reference values or no row
            has a published mesh size.
        ToleranceError: If any compared value is out of tolerance.
    """
    if preset not in REFERENCE:
        raise InvalidInputError(preset, "No reference values for this preset.")
    reference = REFERENCE[preset]
    mismatches: list[str] = []
    previous: dict[tuple[float, str], int | None] = {}
    compared = 0
    for row in table.rows:
        key = (row.alpha, row.r_label)
        index = _row_index(preset, row)
        before, previous[key] = previous.get(key), index
        entries = reference.get(row.alpha, {}).get(row.r_label)
        if entries is None or index is None:
            continue
        expected_error, expected_rate = entries[index]
        compared += 1
        size = f"h={row.h:g}" if preset == "t4" else f"N={row.n}"
        where = f"alpha={row.alpha:g}, r={row.r_label}, {size}"
        if (
            error_tolerance is not None
            and abs(row.error - expected_error) > error_tolerance * expected_error
        ):
            mismatches.append(f"{where}: error {row.error:.3e}, expected {expected_error:.2e}")
        if (
            expected_rate is not None
            and row.rate is not None
            and before == index - 1
            and abs(row.rate - expected_rate) > rate_tolerance
        ):
            mismatches.append(f"{where}: rate {row.rate:.2f}, expected {expected_rate:.2f}")
    if not compared:
        raise InvalidInputError(preset, "No row has a published mesh size.")
    if mismatches:
        raise ToleranceError(mismatches)
    return compared
