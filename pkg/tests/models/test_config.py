"""Tests for run configuration models."""

import pytest

from fracdg.exceptions import InvalidInputError
from fracdg.models.config import Example, RunConfig, SolveMode, TablePreset


class TestRunConfig:
    """Tests for RunConfig validation."""

    def test_defaults(self):
        """Defaults describe the scalar example with optimal grading."""
        config = RunConfig()
        assert config.example == Example.ODE1
        assert config.r is None
        assert config.r_label == "opt"
        assert config.sigma_value == config.alpha
        assert config.mode == SolveMode.DIRECT

    def test_lists_become_tuples(self):
        """Sizes given as lists are stored as tuples."""
        assert RunConfig(n_list=[8, 16]).n_list == (8, 16)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": 0.0},
            {"alpha": 1.0},
            {"p": 3},
            {"r": 0.5},
            {"n_list": ()},
            {"n_list": (16, 8)},
            {"h_list": (0.25, 0.5)},
            {"h_list": (1.0,)},
            {"eps": 0.0},
            {"T": 0.0},
            {"example": Example.PDE1},
        ],
    )
    def test_invalid(self, kwargs):
        """Out of range values are rejected."""
        with pytest.raises(InvalidInputError):
            RunConfig(**kwargs)

    def test_r_label(self):
        """Explicit gradings are labelled by value."""
        assert RunConfig(r=1.6).r_label == "1.6"
        assert RunConfig(r=2.0).r_label == "2"


def test_table_preset_configs():
    """Presets expand alpha-major into one config per column."""
    preset = TablePreset(
        name="x",
        title="x",
        example=Example.ODE1,
        p=1,
        alphas=(0.3, 0.7),
        rs=(1.0, None),
        n_list=(8, 16),
    )
    configs = preset.configs()
    assert [(c.alpha, c.r) for c in configs] == [(0.3, 1.0), (0.3, None), (0.7, 1.0), (0.7, None)]
    assert all(c.n_list == (8, 16) for c in configs)
