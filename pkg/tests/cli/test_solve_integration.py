"""Integration tests for the solve commands."""

from fracdg.cli.main import cli


def test_solve_ode(runner, tmp_path):
    """The scalar example solves and writes its coefficients."""
    trace = tmp_path / "trace.csv"
    samples = tmp_path / "samples.csv"
    result = runner.invoke(
        cli,
        ["solve", "ode", "-N", "8", "--trace", str(trace), "--samples", str(samples), "--points", "5"],
    )
    assert result.exit_code == 0, result.output
    assert "average error" in result.output
    assert len(trace.read_text().splitlines()) == 1 + 8 * 2
    assert len(samples.read_text().splitlines()) == 1 + 5


def test_solve_ode_fast(runner):
    """Fast solves report their kernel size."""
    result = runner.invoke(cli, ["solve", "ode", "-N", "16", "--mode", "fast", "--r", "2"])
    assert result.exit_code == 0, result.output
    assert "kernel modes Q" in result.output


def test_solve_pde(runner):
    """The subdiffusion example solves on a coarse grid."""
    result = runner.invoke(cli, ["solve", "pde", "-N", "4", "--h", "1/4", "-p", "2"])
    assert result.exit_code == 0, result.output
    assert "1/4" in result.output


def test_invalid_grading(runner):
    """Gradings below 1 are rejected by the configuration."""
    result = runner.invoke(cli, ["solve", "ode", "-N", "4", "--r", "0.5"])
    assert result.exit_code == 1
    assert "Grading exponent" in result.output


def test_invalid_width(runner):
    """Spatial widths that are not 1/k are rejected."""
    result = runner.invoke(cli, ["solve", "pde", "-N", "4", "--h", "0.3"])
    assert result.exit_code == 1
