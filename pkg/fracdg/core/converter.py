"""Cattrs converters for kernels, run configurations and report rows.

The JSON converter reads and writes kernel files and run configurations;
the CSV converter only flattens report rows for :mod:`csv`.
"""

from enum import StrEnum
from pathlib import Path

import cattrs
import numpy as np
from cattr.preconf.json import make_converter as make_json_converter
from cattrs.gen import make_dict_structure_fn, make_dict_unstructure_fn, override

from fracdg.models.config import RunConfig
from fracdg.models.kernel import SOEKernel
from fracdg.models.report import BenchRow, ErrorRow

AUTO_KEYWORDS = frozenset({"opt", "optimal", "auto"})
"""Strings that select the automatic choice of r, eps or sigma."""

_AUTO_FIELDS = ("r", "eps", "sigma")

_json_converter = make_json_converter()
_csv_converter = cattrs.Converter()


def _register_plain_hooks(converter: cattrs.Converter) -> None:
    converter.register_unstructure_hook(np.ndarray, lambda array: array.tolist())
    converter.register_unstructure_hook(StrEnum, lambda member: member.value)
    converter.register_unstructure_hook(Path, str)


for _converter in (_json_converter, _csv_converter):
    _register_plain_hooks(_converter)

_json_converter.register_structure_hook(np.ndarray, lambda value, _: np.asarray(value, dtype=float))
_json_converter.register_structure_hook(Path, lambda value, _: Path(value))

_structure_run_config = make_dict_structure_fn(RunConfig, _json_converter)


@_json_converter.register_structure_hook
def _structure_config(data: dict, cls: type[RunConfig]) -> RunConfig:
    """Read a RunConfig; "opt" or "auto" in r, eps or sigma means None."""
    cleaned = {
        key: None
        if key in _AUTO_FIELDS and isinstance(value, str) and value.lower() in AUTO_KEYWORDS
        else value
        for key, value in data.items()
    }
    return _structure_run_config(cleaned, cls)


# Uncertified kernels leave the field out.
_json_converter.register_unstructure_hook(
    SOEKernel,
    make_dict_unstructure_fn(
        SOEKernel, _json_converter, certified_error=override(omit_if_default=True)
    ),
)

_csv_converter.register_unstructure_hook(
    ErrorRow,
    make_dict_unstructure_fn(ErrorRow, _csv_converter, r_label=override(rename="column")),
)
_csv_converter.register_unstructure_hook(BenchRow, make_dict_unstructure_fn(BenchRow, _csv_converter))


def get_json_converter() -> cattrs.Converter:
    """Converter for kernel files and run configurations."""
    return _json_converter


def get_csv_converter() -> cattrs.Converter:
    """Converter that flattens report rows for CSV."""
    return _csv_converter
