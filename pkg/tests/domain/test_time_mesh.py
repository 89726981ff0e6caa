"""Tests for graded meshes, grading exponents and quadrature rules."""

import math

import numpy as np
import pytest

from fracdg.domain.quadrature import gauss_legendre, geometric_edges, panel_rule, uniform_edges
from fracdg.domain.time_mesh import graded_mesh, optimal_r, predicted_error_rate, predicted_order
from fracdg.exceptions import InvalidInputError


class TestGradedMesh:
    """Tests for graded_mesh."""

    def test_points_follow_power_law(self):
        """Points are (n/N)^r T with exact end points."""
        mesh = graded_mesh(4.0, 8, 2.0)
        expected = (np.arange(9) / 8) ** 2 * 4.0
        np.testing.assert_allclose(mesh.points, expected, rtol=1e-15)
        assert mesh.points[0] == 0.0
        assert mesh.points[-1] == 4.0

    def test_steps_sum_to_final_time(self):
        """Interval lengths are positive and add up to T."""
        mesh = graded_mesh(4.0, 100, 3.5)
        assert np.all(mesh.tau > 0)
        assert math.isclose(mesh.tau.sum(), 4.0, rel_tol=1e-14)

    def test_steps_increase_with_grading(self):
        """A graded mesh refines toward t = 0."""
        mesh = graded_mesh(1.0, 16, 2.5)
        assert np.all(np.diff(mesh.tau) > 0)
        assert mesh.tau_min == mesh.step(1)

    def test_uniform_mesh(self):
        """r = 1 gives a uniform mesh."""
        mesh = graded_mesh(2.0, 4, 1.0)
        np.testing.assert_allclose(mesh.tau, 0.5)
        assert mesh.interval(2) == (0.5, 1.0)

    def test_single_interval(self):
        """N = 1 is allowed."""
        mesh = graded_mesh(1.0, 1, 2.0)
        assert mesh.N == 1
        assert mesh.step(1) == 1.0

    @pytest.mark.parametrize("r", [1.0, 2.0, 7 / 3])
    def test_meshes_nest_under_doubling(self, r):
        """Every point of the N mesh is a point of the 2N mesh."""
        coarse = graded_mesh(4.0, 16, r)
        fine = graded_mesh(4.0, 32, r)
        np.testing.assert_array_equal(fine.points[::2], coarse.points)
        np.testing.assert_allclose(fine.tau[::2] + fine.tau[1::2], coarse.tau, rtol=1e-13)

    def test_points_are_read_only(self):
        """Mesh arrays cannot be modified in place."""
        mesh = graded_mesh(1.0, 4, 2.0)
        with pytest.raises(ValueError):
            mesh.points[1] = 0.5

    @pytest.mark.parametrize(
        ("T", "N", "r"),
        [(0.0, 4, 1.0), (-1.0, 4, 1.0), (1.0, 0, 1.0), (1.0, 4, 0.5)],
    )
    def test_invalid_arguments(self, T, N, r):  # noqa: N803
        """Non-positive T, N < 1 and r < 1 are rejected."""
        with pytest.raises(InvalidInputError):
            graded_mesh(T, N, r)


class TestGradingExponents:
    """Tests for the optimal grading and predicted rates."""

    @pytest.mark.parametrize(
        ("alpha", "p", "expected"),
        [(0.5, 1, 3.5 / 1.5), (0.2, 1, 3.8 / 1.2), (0.8, 2, 5.2 / 1.8)],
    )
    def test_optimal_r(self, alpha, p, expected):
        """r* = (2p + 2 - alpha) / (1 + 2 sigma - alpha) with sigma = alpha."""
        assert math.isclose(optimal_r(alpha, alpha, p), expected)

    def test_optimal_r_can_fall_below_one(self):
        """Very regular solutions give r* < 1; callers clamp it."""
        assert optimal_r(0.5, 3.0, 1) < 1

    def test_predicted_order_saturates(self):
        """The predicted order never exceeds p + 1."""
        assert predicted_order(0.5, 0.5, 10.0, 1) == 2.0
        assert predicted_order(0.5, 0.5, 10.0, 2) == 3.0

    def test_predicted_order_uniform_mesh(self):
        """On a uniform mesh the order is (1 + 2 sigma) / 2."""
        assert math.isclose(predicted_order(0.5, 0.5, 1.0, 1), 1.0)

    def test_error_rate_regimes(self):
        """The three grading regimes of the error bound."""
        alpha, sigma, p, N = 0.5, 0.5, 1, 64  # noqa: N806
        r_star = optimal_r(alpha, sigma, p)
        below = predicted_error_rate(4, N, sigma, alpha, 1.0, p)
        assert math.isclose(below, N ** (-1.5 - 0.5))
        at = predicted_error_rate(4, N, sigma, alpha, r_star, p)
        assert math.isclose(at, N**-4 * (1 + math.log(4)))
        above = predicted_error_rate(N, N, sigma, alpha, r_star + 1, p)
        assert math.isclose(above, N**-4)

    def test_error_rate_index_check(self):
        """The step index must lie in 1..N."""
        with pytest.raises(InvalidInputError):
            predicted_error_rate(0, 8, 0.5, 0.5, 1.0, 1)


class TestQuadrature:
    """Tests for Gauss-Legendre helpers."""

    def test_gauss_legendre_exactness(self):
        """An n-point rule integrates x^(2n-1) exactly on [0, 1]."""
        x, w = gauss_legendre(5)
        assert math.isclose(w.sum(), 1.0)
        assert math.isclose(np.sum(w * x**9), 0.1, rel_tol=1e-13)

    def test_panel_rule_is_composite(self):
        """Composite rules integrate smooth functions over all panels."""
        edges = uniform_edges(0.0, 2.0, 4)
        x, w = panel_rule(edges, 8)
        assert x.size == 32
        assert np.all(np.diff(x) > 0)
        assert math.isclose(np.sum(w * np.exp(x)), math.exp(2.0) - 1.0, rel_tol=1e-13)

    def test_geometric_edges(self):
        """Geometric edges cluster at the left end."""
        edges = geometric_edges(0.0, 1.0, 3, 0.5)
        np.testing.assert_allclose(edges, [0.0, 0.125, 0.25, 0.5, 1.0])

    def test_singular_integrand_on_geometric_panels(self):
        """Geometric panels resolve a t^(-1/2) singularity."""
        x, w = panel_rule(geometric_edges(0.0, 1.0, 40, 0.25), 16)
        assert math.isclose(np.sum(w / np.sqrt(x)), 2.0, rel_tol=1e-9)
