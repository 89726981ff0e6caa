"""Runner and output parsers for CLI tests."""

from __future__ import annotations

import csv
import io
import json
import re
from typing import Any

import pytest
from click.testing import CliRunner

_DOCUMENT_START = re.compile(r"^[\[{]", re.MULTILINE)


@pytest.fixture
def runner() -> CliRunner:
    """Click runner; ``result.stdout`` holds only what the command printed as results."""
    return CliRunner()


def parse_json_output(text: str) -> Any:
    """Parse the JSON document in ``text``, skipping any leading lines such as warnings."""
    for match in _DOCUMENT_START.finditer(text):
        try:
            return json.loads(text[match.start() :])
        except json.JSONDecodeError:
            continue
    raise AssertionError(f"No JSON document in output: {text!r}")


def parse_csv_output(text: str) -> list[dict[str, str]]:
    """Rows of the CSV in ``text``, keyed by its header."""
    return list(csv.DictReader(io.StringIO(text.strip())))
