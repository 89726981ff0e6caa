"""Shared pytest configuration and fixtures."""

from unittest.mock import patch

import pytest


def pytest_addoption(parser):
    """Register the --runslow switch."""
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="Run long reproduction tests.",
    )


def pytest_collection_modifyitems(config, items):
    """Skip tests marked slow unless --runslow is given."""
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session", autouse=True)
def mock_platformdirs(tmp_path_factory):
    """Send log files to a temporary directory instead of the user log path."""
    temp_dir = tmp_path_factory.mktemp("fracdg_test_logs")

    with patch("platformdirs.user_log_path", return_value=temp_dir):
        yield temp_dir
