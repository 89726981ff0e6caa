"""Shared fixtures and helpers for domain tests."""

import numpy as np
import pytest

from fracdg.domain.time_mesh import graded_mesh
from fracdg.models.mesh import GradedMesh
from fracdg.models.trace import PolyTrace


def constant_trace(mesh: GradedMesh, p: int = 1, value: float = 1.0) -> PolyTrace:
    """Trace of the constant function on every interval."""
    blocks = np.zeros((mesh.N, p + 1, 1))
    blocks[:, 0, 0] = value
    return PolyTrace.from_blocks(mesh, blocks)


def identity_trace(mesh: GradedMesh, p: int = 1) -> PolyTrace:
    """Trace of U(t) = t, exact for every p >= 1."""
    blocks = np.zeros((mesh.N, p + 1, 1))
    blocks[:, 0, 0] = mesh.points[:-1]
    blocks[:, 1, 0] = mesh.tau
    return PolyTrace.from_blocks(mesh, blocks)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator for the randomized checks."""
    return np.random.default_rng(20240611)


@pytest.fixture
def graded() -> GradedMesh:
    """A moderately graded mesh on [0, 1]."""
    return graded_mesh(1.0, 24, 2.0)
