"""Tests for CLI parameter types."""

import click
import pytest

from fracdg.cli.utils import flags


class TestNumberType:
    """Tests for numbers and fractions."""

    @pytest.mark.parametrize(
        ("value", "expected"), [("1/64", 1 / 64), ("0.25", 0.25), ("1e-10", 1e-10), (2, 2.0)]
    )
    def test_convert(self, value, expected):
        """Decimals and fractions are accepted."""
        assert flags.NUMBER.convert(value, None, None) == pytest.approx(expected)

    @pytest.mark.parametrize("value", ["abc", "1/0", "0", "-1/4"])
    def test_invalid(self, value):
        """Non-numbers and non-positive values fail."""
        with pytest.raises(click.BadParameter):
            flags.NUMBER.convert(value, None, None)

    @pytest.mark.parametrize("value", ["opt", "OPT", "auto", None])
    def test_keywords(self, value):
        """Keywords select the automatic choice."""
        assert flags.GRADING.convert(value, None, None) is None

    def test_optional_number(self):
        """Numbers still convert when a keyword is allowed."""
        assert flags.GRADING.convert("2.5", None, None) == 2.5


class TestListType:
    """Tests for comma separated lists."""

    def test_sizes(self):
        """Sizes parse into a tuple of ints."""
        assert flags.SIZES.convert("8, 16,32", None, None) == (8, 16, 32)

    def test_widths(self):
        """Widths accept fractions."""
        assert flags.WIDTHS.convert("1/4,1/8", None, None) == (0.25, 0.125)

    def test_gradings(self):
        """Gradings mix numbers and 'opt'."""
        assert flags.GRADINGS.convert("1,1.6,opt", None, None) == (1.0, 1.6, None)

    def test_alphas_range(self):
        """Orders outside (0, 1) fail."""
        with pytest.raises(click.BadParameter):
            flags.ALPHAS.convert("0.5,1.0", None, None)

    @pytest.mark.parametrize("value", ["", ","])
    def test_empty(self, value):
        """Empty lists fail."""
        with pytest.raises(click.BadParameter):
            flags.SIZES.convert(value, None, None)

    def test_passthrough(self):
        """Already parsed defaults are kept."""
        assert flags.SIZES.convert((8, 16), None, None) == (8, 16)
