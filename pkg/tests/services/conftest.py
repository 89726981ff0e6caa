"""Shared fixtures and helpers for service tests."""

import pytest

from fracdg.models.config import Example, RunConfig


def drain(job):
    """Run a service generator to completion.

    Returns:
        The yielded messages and the generator's return value.
    """
    messages = []
    while True:
        try:
            messages.append(next(job))
        except StopIteration as stop:
            return messages, stop.value


@pytest.fixture
def small_config() -> RunConfig:
    """A quick scalar run on two coarse meshes."""
    return RunConfig(example=Example.ODE1, alpha=0.5, p=1, r=None, n_list=(8, 16))
