"""Tests for the DG time stepper."""

import logging
import math

import numpy as np
import pytest
from scipy import sparse

from fracdg.domain import dg_solver, fem1d
from fracdg.domain.time_mesh import graded_mesh, optimal_r
from fracdg.exceptions import ConfigurationError, InvalidInputError, SolverError
from fracdg.models.config import SolveMode
from fracdg.models.system import SpatialSystem
from fracdg.services import problems
from fracdg.services.bench_service import nodal_differences, weighted_difference
from fracdg.services.convergence_service import average_error


def _polynomial_system(alpha: float, p: int) -> SpatialSystem:
    """Scalar problem D^alpha u + u = f with exact solution sum_k t^k, k <= p."""
    one = sparse.csr_matrix(np.ones((1, 1)))

    def exact(t):
        return sum(np.asarray(t, dtype=float) ** k for k in range(p + 1))

    def forcing(t):
        caputo = sum(
            math.gamma(k + 1) / math.gamma(k + 1 - alpha) * t ** (k - alpha)
            for k in range(1, p + 1)
        )
        return caputo + exact(t)

    return SpatialSystem(
        name="poly",
        mass=one,
        stiffness=one,
        load=lambda times: forcing(times)[:, None],
        u0=np.ones(1),
        exact=lambda t: np.atleast_1d(exact(t)),
    )


class TestExactness:
    """Solutions inside the discrete space are reproduced."""

    @pytest.mark.parametrize("mode", [SolveMode.DIRECT, SolveMode.FAST])
    @pytest.mark.parametrize("p", [1, 2])
    def test_polynomial_solution(self, p, mode):
        """A polynomial of degree p is recovered up to quadrature error."""
        alpha = 0.6
        system = _polynomial_system(alpha, p)
        mesh = graded_mesh(1.0, 12, 2.0)
        kernel = dg_solver.fast_kernel(mesh, alpha, 1e-12) if mode == SolveMode.FAST else None
        trace = dg_solver.solve(system, mesh, alpha, p, mode, kernel)
        exact = np.array([system.exact(t)[0] for t in mesh.points[1:]])
        np.testing.assert_allclose(trace.left_limits()[:, 0], exact, rtol=1e-8)

    def test_trace_is_complete(self):
        """Every interval is solved and the callback sees every step."""
        system = _polynomial_system(0.5, 1)
        mesh = graded_mesh(1.0, 6, 1.0)
        seen = []
        trace = dg_solver.solve(system, mesh, 0.5, 1, on_step=seen.append)
        assert trace.complete
        assert seen == list(range(1, 7))


def _far_coupling(alpha, p, source, target, points=30):
    """Tensor Gauss rule for int_target chi_a int_source omega_(-alpha)(t - s) chi_b(s) ds dt."""
    x, w = np.polynomial.legendre.leggauss(points)
    x, w = (x + 1) / 2, w / 2
    (s0, s1), (t0, t1) = source, target
    s, t = s0 + (s1 - s0) * x, t0 + (t1 - t0) * x
    kernel = (t[:, None] - s[None, :]) ** (-1.0 - alpha) / math.gamma(-alpha)
    test = (t1 - t0) * w[:, None] * x[:, None] ** np.arange(p + 1)
    trial = (s1 - s0) * w[:, None] * x[:, None] ** np.arange(p + 1)
    return test.T @ kernel @ trial


class TestGlobalAssembly:
    """Time stepping solves the all-at-once block lower triangular system."""

    @pytest.mark.parametrize("p", [1, 2])
    @pytest.mark.parametrize("N", [4, 8])
    def test_matches_global_system(self, p, N):  # noqa: N803
        """Coefficients agree with one dense solve over every interval."""
        alpha, mass, stiffness = 0.4, 1.3, 0.7
        system = SpatialSystem(
            name="scalar",
            mass=sparse.csr_matrix([[mass]]),
            stiffness=sparse.csr_matrix([[stiffness]]),
            load=lambda t: np.cos(t)[:, None],
            u0=np.ones(1),
        )
        mesh = graded_mesh(1.0, N, 2.0)
        size = p + 1
        matrix = np.zeros((N * size, N * size))
        rhs = np.zeros(N * size)
        for n in range(1, N + 1):
            rows = slice((n - 1) * size, n * size)
            previous = mesh.step(n - 1) if n > 1 else None
            blocks = dg_core.local_frac_block(alpha, p, mesh.step(n), previous)
            matrix[rows, rows] = mass * blocks.B + stiffness * blocks.G
            if n > 1:
                matrix[rows, (n - 2) * size : (n - 1) * size] = mass * blocks.C
            for k in range(1, n - 1):
                coupling = _far_coupling(alpha, p, mesh.interval(k), mesh.interval(n))
                matrix[rows, (k - 1) * size : k * size] = mass * coupling
            rhs[rows] = dg_core.rhs_assemble(n, system, mesh, alpha, p)[:, 0]
        expected = np.linalg.solve(matrix, rhs).reshape(N, size)

        trace = dg_solver.solve(system, mesh, alpha, p)
        scale = np.abs(expected).max()
        assert np.abs(trace.blocks[:, :, 0] - expected).max() <= 1e-8 * scale


class TestConvergence:
    """Observed convergence of the scalar manufactured problem."""

    def _errors(self, alpha, p, sizes):
        system = problems.example1(alpha)
        r = optimal_r(alpha, alpha, p)
        errors = []
        for n in sizes:
            trace = dg_solver.solve(system, graded_mesh(4.0, n, r), alpha, p)
            errors.append(average_error(trace, system))
        return errors

    def test_linear_in_time(self):
        """p = 1 with optimal grading converges at order close to 2."""
        errors = self._errors(0.5, 1, (16, 32))
        assert errors[1] < 1e-3
        assert math.log2(errors[0] / errors[1]) > 1.7

    def test_quadratic_in_time(self):
        """p = 2 with optimal grading converges at order close to 3."""
        errors = self._errors(0.5, 2, (16, 32))
        assert math.log2(errors[0] / errors[1]) > 2.4


class TestFastSolver:
    """Tests for the compressed history solver."""

    def test_fast_matches_direct_scalar(self):
        """Fast and direct solutions differ by less than the predicted bound."""
        alpha = 0.4
        system = problems.example1(alpha)
        mesh = graded_mesh(4.0, 64, optimal_r(alpha, alpha, 1))
        eps = 1e-12
        direct = dg_solver.solve(system, mesh, alpha, 1)
        fast = dg_solver.solve(
            system, mesh, alpha, 1, SolveMode.FAST, dg_solver.fast_kernel(mesh, alpha, eps)
        )
        difference = np.abs(direct.left_limits() - fast.left_limits()).max()
        assert difference <= 100 * dg_solver.fast_error_bound(eps, mesh, alpha)

    def test_fast_matches_direct_fem(self):
        """The sparse path agrees as well."""
        alpha = 0.5
        system = problems.example2(alpha, fem1d.build_grid(1 / 16))
        mesh = graded_mesh(1.0, 24, 2.0)
        direct = dg_solver.solve(system, mesh, alpha, 1)
        fast = dg_solver.solve(
            system, mesh, alpha, 1, SolveMode.FAST, dg_solver.fast_kernel(mesh, alpha, 1e-12)
        )
        assert np.abs(direct.blocks - fast.blocks).max() < 1e-8

    def test_difference_scales_with_eps(self):
        """The fast/direct difference shrinks about linearly with the kernel accuracy."""
        alpha = 0.5
        system = problems.example1(alpha)
        mesh = graded_mesh(4.0, 128, 2.0)
        direct = dg_solver.solve(system, mesh, alpha, 1)
        weighted = {}
        for eps in (1e-6, 1e-9, 1e-12):
            kernel = dg_solver.fast_kernel(mesh, alpha, eps)
            fast = dg_solver.solve(system, mesh, alpha, 1, SolveMode.FAST, kernel)
            weighted[eps] = weighted_difference(direct, nodal_differences(direct, fast))
        assert weighted[1e-12] <= 1e-9
        assert 1e2 <= weighted[1e-6] / weighted[1e-9] <= 1e4

    @pytest.mark.parametrize("mode", [SolveMode.DIRECT, SolveMode.FAST])
    def test_repeated_solves_are_identical(self, mode):
        """Two solves of the same problem give bit-identical coefficients."""
        alpha = 0.5
        system = problems.example2(alpha, fem1d.build_grid(1 / 8))
        mesh = graded_mesh(1.0, 16, 2.0)
        kernel = dg_solver.fast_kernel(mesh, alpha, 1e-10) if mode == SolveMode.FAST else None
        first = dg_solver.solve(system, mesh, alpha, 1, mode, kernel)
        second = dg_solver.solve(system, mesh, alpha, 1, mode, kernel)
        np.testing.assert_array_equal(first.blocks, second.blocks)

    def test_finished_solve_is_logged(self, caplog):
        """A finished solve is logged at INFO."""
        mesh = graded_mesh(1.0, 4, 1.0)
        with caplog.at_level(logging.INFO, logger="fracdg"):
            dg_solver.solve(problems.example1(0.5), mesh, 0.5, 1)
        records = [r for r in caplog.records if r.getMessage().startswith("Solved ode1")]
        assert len(records) == 1
        assert records[0].levelno == logging.INFO

    def test_fast_needs_kernel(self):
        """A fast solve without kernel is a configuration error."""
        mesh = graded_mesh(1.0, 8, 1.0)
        with pytest.raises(ConfigurationError):
            dg_solver.solve(problems.example1(0.5), mesh, 0.5, 1, SolveMode.FAST)

    def test_fast_kernel_must_match_alpha(self):
        """A kernel built for another order is rejected."""
        mesh = graded_mesh(1.0, 8, 1.0)
        kernel = dg_solver.fast_kernel(mesh, 0.3, 1e-8)
        with pytest.raises(ConfigurationError):
            dg_solver.solve(problems.example1(0.5), mesh, 0.5, 1, SolveMode.FAST, kernel)

    def test_fast_kernel_needs_two_intervals(self):
        """A single interval has no history to compress."""
        with pytest.raises(InvalidInputError):
            dg_solver.fast_kernel(graded_mesh(1.0, 1, 1.0), 0.5)

    def test_default_eps(self):
        """eps = min(1e-12, N^(-r alpha) / 100)."""
        assert dg_solver.default_eps(graded_mesh(1.0, 100, 2.0), 0.5) == 1e-12
        assert math.isclose(dg_solver.default_eps(graded_mesh(1.0, 10, 1.0), 0.1), 1e-12)

    def test_error_bound(self):
        """The bound is eps (t_n / t_1)^alpha."""
        mesh = graded_mesh(1.0, 4, 1.0)
        assert math.isclose(dg_solver.fast_error_bound(1e-10, mesh, 0.5), 1e-10 * 2.0)
        assert math.isclose(dg_solver.fast_error_bound(1e-10, mesh, 0.5, 1), 1e-10)


class TestFailures:
    """Tests for solver error handling."""

    def test_singular_step(self):
        """A singular step system raises SolverError with the step index."""
        zero = sparse.csr_matrix(np.zeros((1, 1)))
        system = SpatialSystem(
            name="singular",
            mass=zero,
            stiffness=zero,
            load=lambda t: np.ones((t.size, 1)),
            u0=np.ones(1),
        )
        with pytest.raises(SolverError) as exc_info:
            dg_solver.solve(system, graded_mesh(1.0, 4, 1.0), 0.5, 1)
        assert exc_info.value.step == 1

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    def test_alpha_range(self, alpha):
        """alpha must lie in (0, 1)."""
        with pytest.raises(InvalidInputError):
            dg_solver.solve(problems.example1(0.5), graded_mesh(1.0, 4, 1.0), alpha, 1)
