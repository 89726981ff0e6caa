"""Service layer for writing and reading results."""

import csv
import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from io import StringIO
from itertools import groupby
from pathlib import Path
from typing import Any

import attrs
import cattrs
import numpy as np

from fracdg.core.converter import get_csv_converter, get_json_converter
from fracdg.core.logging import logger
from fracdg.exceptions import InvalidInputError, OutputError
from fracdg.models.kernel import SOEKernel
from fracdg.models.report import BenchReport, BenchRow, ErrorRow, ErrorTable, ReportFormat
from fracdg.models.trace import PolyTrace

ERROR_FIELDS = [
    "alpha",
    "column",
    "r",
    "n",
    "h",
    "error",
    "rate",
    "wall_time_ms",
    "predicted_order",
]
BENCH_FIELDS = [field.name for field in attrs.fields(BenchRow)]


def build_csv(items: Iterable[Mapping[str, Any]], fields: Sequence[str]) -> str:
    """Render rows as CSV text with a header line."""
    buffer = StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(items)
    return buffer.getvalue()


def _format_error(value: float) -> str:
    return f"{value:.2e}"


def _format_rate(value: float | None) -> str:
    return "-" if value is None else f"{value:.2f}"


def _format_h(h: float | None) -> str:
    if h is None:
        return "-"
    inverse = 1 / h
    return f"1/{round(inverse)}" if abs(inverse - round(inverse)) < 1e-9 else f"{h:g}"


def to_markdown(table: ErrorTable) -> str:
    """Render a table as markdown, one block per alpha with (error, rate) pairs per column."""
    lines = [f"## {table.title}", ""]
    spatial = len({row.h for row in table.rows}) > 1 and len({row.n for row in table.rows}) == 1
    for alpha, group in groupby(table.rows, key=lambda row: row.alpha):
        rows = list(group)
        labels = list(dict.fromkeys(row.r_label for row in rows))
        keys = list(dict.fromkeys((row.n, row.h) for row in rows))
        cells = {(row.r_label, row.n, row.h): row for row in rows}

        lines.append(f"### alpha = {alpha:g}")
        lines.append("")
        header = ["h" if spatial else "N"]
        for label in labels:
            header += [f"r={label} error", "rate"]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "---|" * len(header))
        for n, h in keys:
            line = [_format_h(h) if spatial else str(n)]
            for label in labels:
                row = cells.get((label, n, h))
                if row is None:
                    line += ["", ""]
                else:
                    line += [_format_error(row.error), _format_rate(row.rate)]
            lines.append("| " + " | ".join(line) + " |")
        lines.append("")
    return "\n".join(lines)


def _write(path: Path, content: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)
    except OSError as exc:
        raise OutputError(path, f"Could not write '{path}': {exc}") from exc
    logger.info("Wrote %s", path)


@dataclass(slots=True, frozen=True)
class ReportService:
    """Service serializing tables, benchmarks, traces and kernels."""

    def render(self, table: ErrorTable, fmt: ReportFormat) -> str:
        """Serialize a convergence table."""
        match fmt:
            case ReportFormat.CSV:
                converter = get_csv_converter()
                return build_csv(
                    (converter.unstructure(row) for row in table.rows), ERROR_FIELDS
                )
            case ReportFormat.JSON:
                return json.dumps(get_json_converter().unstructure(table), indent=4)
            case ReportFormat.MARKDOWN:
                return to_markdown(table)
        raise InvalidInputError(fmt, "Unsupported report format.")

    def emit(self, table: ErrorTable, fmt: ReportFormat, path: Path) -> None:
        """Write a convergence table to ``path``.

        Raises:
            OutputError: If the file cannot be written.
        """
        _write(path, self.render(table, ReportFormat(fmt)))

    def load_table(self, path: Path) -> ErrorTable:
        """Read a convergence table written as JSON.

        Raises:
            OutputError: If the file cannot be read or parsed.
        """
        try:
            data = json.loads(path.read_text())
            return get_json_converter().structure(data, ErrorTable)
        except (OSError, json.JSONDecodeError, cattrs.BaseValidationError) as exc:
            raise OutputError(path, f"Could not read table: {exc}") from exc

    def render_bench(self, report: BenchReport, fmt: ReportFormat) -> str:
        """Serialize a benchmark report; CSV holds one line per mesh size."""
        match fmt:
            case ReportFormat.CSV:
                converter = get_csv_converter()
                return build_csv((converter.unstructure(row) for row in report.rows), BENCH_FIELDS)
            case ReportFormat.JSON:
                return json.dumps(get_json_converter().unstructure(report), indent=4)
            case ReportFormat.MARKDOWN:
                header = ["N", "direct ms", "fast ms", "ratio", "Q", "max diff", "weighted diff", "bound"]
                lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
                for row in report.rows:
                    values = [
                        str(row.n),
                        f"{row.direct_ms:.1f}",
                        f"{row.fast_ms:.1f}",
                        f"{row.ratio:.2f}",
                        str(row.q_modes),
                        f"{row.max_difference:.2e}",
                        f"{row.weighted_difference:.2e}",
                        f"{row.predicted_bound:.2e}",
                    ]
                    lines.append("| " + " | ".join(values) + " |")
                return "\n".join(lines) + "\n"
        raise InvalidInputError(fmt, "Unsupported report format.")

    def emit_bench(self, report: BenchReport, fmt: ReportFormat, path: Path) -> None:
        """Write a benchmark report to ``path``."""
        _write(path, self.render_bench(report, ReportFormat(fmt)))

    def export_profile(self, report: BenchReport, path: Path) -> None:
        """Write the per-step fast/direct differences as plot-ready CSV."""
        rows = (attrs.asdict(sample) for sample in report.profile)
        _write(path, build_csv(rows, ["n", "t", "difference"]))

    def export_trace(self, trace: PolyTrace, path: Path) -> None:
        """Write every coefficient as CSV rows (n, t_n, k, dof, coefficient)."""
        points = trace.mesh.points
        rows = (
            {
                "n": n,
                "t_n": float(points[n]),
                "k": k,
                "dof": dof,
                "coefficient": float(trace.blocks[n - 1, k, dof]),
            }
            for n in range(1, trace.solved + 1)
            for k in range(trace.p + 1)
            for dof in range(trace.M)
        )
        _write(path, build_csv(rows, ["n", "t_n", "k", "dof", "coefficient"]))

    def export_samples(self, trace: PolyTrace, times: np.ndarray, path: Path) -> None:
        """Write the trace sampled at ``times`` as CSV rows (t, dof, value)."""
        values = trace.evaluate(times)
        rows = (
            {"t": float(t), "dof": dof, "value": float(values[i, dof])}
            for i, t in enumerate(np.atleast_1d(times))
            for dof in range(trace.M)
        )
        _write(path, build_csv(rows, ["t", "dof", "value"]))

    def dump_kernel(self, kernel: SOEKernel, path: Path) -> None:
        """Write a kernel as JSON."""
        _write(path, json.dumps(get_json_converter().unstructure(kernel), indent=4))

    def load_kernel(self, path: Path) -> SOEKernel:
        """Read a kernel written by ``dump_kernel``.

        Raises:
            OutputError: If the file cannot be read or parsed.
        """
        try:
            data = json.loads(path.read_text())
            return get_json_converter().structure(data, SOEKernel)
        except (OSError, json.JSONDecodeError, cattrs.BaseValidationError) as exc:
            raise OutputError(path, f"Could not read kernel: {exc}") from exc
