"""Tests for piecewise polynomial traces."""

import numpy as np
import pytest

from fracdg.domain.time_mesh import graded_mesh
from fracdg.exceptions import InvalidInputError
from fracdg.models.trace import HistoryState, PolyTrace


@pytest.fixture
def linear_trace() -> PolyTrace:
    """Trace of U(t) = 2t on a uniform mesh of [0, 1]."""
    mesh = graded_mesh(1.0, 4, 1.0)
    blocks = np.stack([[[2 * t0], [2 * tau]] for t0, tau in zip(mesh.points[:-1], mesh.tau)])
    return PolyTrace.from_blocks(mesh, blocks)


def test_limits(linear_trace):
    """Left limits are block sums and right limits the constant terms."""
    np.testing.assert_allclose(linear_trace.left_limits()[:, 0], [0.5, 1.0, 1.5, 2.0])
    np.testing.assert_allclose(linear_trace.left_limit(2), [1.0])
    np.testing.assert_allclose(linear_trace.right_limit(2), [1.0])


def test_evaluate(linear_trace):
    """Evaluation follows the represented polynomial."""
    times = np.array([0.0, 0.1, 0.25, 0.6, 1.0])
    np.testing.assert_allclose(linear_trace.evaluate(times)[:, 0], 2 * times)


def test_evaluate_outside(linear_trace):
    """Times beyond the solved range are rejected."""
    with pytest.raises(InvalidInputError):
        linear_trace.evaluate(1.5)


def test_append_and_block():
    """Blocks are appended in order and only solved ones are readable."""
    trace = PolyTrace(graded_mesh(1.0, 2, 1.0), 1, 3, np.zeros(3))
    assert trace.blocks.shape == (2, 2, 3)
    with pytest.raises(InvalidInputError):
        trace.block(1)
    trace.append(np.ones((2, 3)))
    trace.append(np.ones((2, 3)))
    assert trace.complete
    with pytest.raises(InvalidInputError):
        trace.append(np.ones((2, 3)))


def test_initial_shape():
    """Initial data must match the number of unknowns."""
    with pytest.raises(InvalidInputError):
        PolyTrace(graded_mesh(1.0, 2, 1.0), 1, 3, np.zeros(2))


def test_from_blocks_shape():
    """Coefficient arrays must cover the mesh."""
    with pytest.raises(InvalidInputError):
        PolyTrace.from_blocks(graded_mesh(1.0, 3, 1.0), np.zeros((2, 2, 1)))


def test_history_state_zeros():
    """Empty states have one accumulator per mode."""
    state = HistoryState.zeros(np.array([1.0, 2.0, 3.0]), 4, q=1)
    assert state.Q == 3
    assert state.modes.shape == (3, 4)
    assert state.moments.shape == (2, 3, 4)
    assert HistoryState.zeros(np.array([1.0]), 2).moments is None
