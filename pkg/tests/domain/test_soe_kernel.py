"""Tests for sum-of-exponentials kernels."""

import math

import attrs
import numpy as np
import pytest

from fracdg.domain import soe_kernel
from fracdg.domain.frac_calc import omega
from fracdg.exceptions import InvalidInputError
from fracdg.models.kernel import SOEKernel


class TestBuildSoe:
    """Tests for build_soe."""

    @pytest.mark.parametrize("beta", [-0.8, -0.5, -0.2, 0.5])
    def test_certified_accuracy(self, beta):
        """The kernel meets its target on the whole window."""
        kernel = soe_kernel.build_soe(beta, 1e-10, 1e-3, 4.0)
        assert kernel.certified_error is not None
        assert kernel.certified_error <= 1e-10
        assert soe_kernel.validate_soe(kernel, 2_000) <= 1e-10

    def test_matches_power_kernel(self):
        """Evaluation agrees with omega at random points of the window."""
        kernel = soe_kernel.build_soe(-0.5, 1e-12, 1e-4, 1.0)
        t = np.random.default_rng(7).uniform(1e-4, 1.0, 50)
        approx = soe_kernel.evaluate_soe(kernel, t)
        np.testing.assert_allclose(approx, omega(-0.5, t), rtol=1e-11)

    def test_nodes_and_weights(self):
        """Nodes are positive and increasing, weights follow the sign of sin(beta pi)."""
        kernel = soe_kernel.build_soe(-0.3, 1e-8, 1e-2, 1.0)
        assert kernel.q == 0
        assert np.all(kernel.nodes > 0)
        assert np.all(np.diff(kernel.nodes) > 0)
        assert np.all(kernel.weights < 0)
        assert kernel.Q == kernel.nodes.size

    def test_more_modes_for_tighter_accuracy(self):
        """A smaller eps needs more modes."""
        loose = soe_kernel.build_soe(-0.5, 1e-6, 1e-3, 1.0)
        tight = soe_kernel.build_soe(-0.5, 1e-12, 1e-3, 1.0)
        assert tight.Q > loose.Q

    def test_modes_grow_slowly_with_window(self):
        """Q grows roughly with log(T / delta)."""
        short = soe_kernel.build_soe(-0.5, 1e-10, 1e-2, 1.0)
        wide = soe_kernel.build_soe(-0.5, 1e-10, 1e-8, 1.0)
        assert wide.Q > short.Q
        assert wide.Q < 4 * short.Q

    @pytest.mark.parametrize("dropped", ["alternate", "fastest"])
    def test_missing_modes_fail_validation(self, dropped):
        """Dropping half the modes of a certified kernel breaks its accuracy."""
        eps = 1e-10
        kernel = soe_kernel.build_soe(-0.5, eps, 1e-3, 1.0)
        keep = slice(None, None, 2) if dropped == "alternate" else slice(None, kernel.Q // 2)
        damaged = attrs.evolve(kernel, nodes=kernel.nodes[keep], weights=kernel.weights[keep])
        assert soe_kernel.validate_soe(damaged, 2_000) > 1e3 * eps

    def test_scalar_evaluation(self):
        """Scalars evaluate to floats."""
        kernel = soe_kernel.build_soe(-0.5, 1e-10, 1e-3, 1.0)
        value = soe_kernel.evaluate_soe(kernel, 0.5)
        assert isinstance(value, float)
        assert math.isclose(value, omega(-0.5, 0.5), rel_tol=1e-9)

    @pytest.mark.parametrize(
        ("beta", "eps", "delta", "T"),
        [
            (1.0, 1e-8, 1e-3, 1.0),
            (1.5, 1e-8, 1e-3, 1.0),
            (-1.0, 1e-8, 1e-3, 1.0),
            (-0.5, 0.0, 1e-3, 1.0),
            (-0.5, 1.0, 1e-3, 1.0),
            (-0.5, 1e-8, 0.0, 1.0),
            (-0.5, 1e-8, 2.0, 1.0),
        ],
    )
    def test_invalid_arguments(self, beta, eps, delta, T):  # noqa: N803
        """Out-of-range arguments are rejected."""
        with pytest.raises(InvalidInputError):
            soe_kernel.build_soe(beta, eps, delta, T)


class TestBuildSoeShifted:
    """Tests for build_soe_shifted."""

    @pytest.mark.parametrize(("beta", "q"), [(0.3, 0), (1.2, 1), (1.7, 2), (2.4, 2)])
    def test_shift_order(self, beta, q):
        """q = ceil(beta - beta0) and the kernel stays accurate."""
        kernel = soe_kernel.build_soe_shifted(beta, 1e-9, 1e-2, 2.0, beta0=0.5)
        assert kernel.q == q
        assert kernel.base_beta <= 0.5
        assert soe_kernel.validate_soe(kernel, 2_000) <= 1e-9

    def test_integer_exponent_rejected(self):
        """Shifting onto an integer exponent is impossible."""
        with pytest.raises(InvalidInputError):
            soe_kernel.build_soe_shifted(2.0, 1e-8, 1e-2, 1.0, beta0=0.5)

    def test_invalid_cap(self):
        """beta0 must be below 1."""
        with pytest.raises(InvalidInputError):
            soe_kernel.build_soe_shifted(1.5, 1e-8, 1e-2, 1.0, beta0=1.0)

    @pytest.mark.parametrize(
        ("beta", "beta0", "q"), [(0.5, 0.0, 1), (0.5, -0.3, 1), (1.5, -0.3, 2)]
    )
    def test_nonpositive_cap(self, beta, beta0, q):
        """A cap at or below zero shifts onto a negative base exponent."""
        kernel = soe_kernel.build_soe_shifted(beta, 1e-9, 1e-2, 2.0, beta0=beta0)
        assert kernel.q == q
        assert kernel.base_beta < 0
        assert soe_kernel.validate_soe(kernel, 2_000) <= 1e-9


class TestKernelModel:
    """Tests for the SOEKernel invariants."""

    def test_arrays_are_read_only(self):
        """Nodes and weights cannot be modified."""
        kernel = SOEKernel(
            beta=-0.5, q=0, eps=1e-6, delta=0.1, horizon=1.0, step_h=0.5,
            nodes=[1.0, 2.0], weights=[-0.1, -0.2],
        )
        with pytest.raises(ValueError):
            kernel.nodes[0] = 3.0

    def test_unsorted_nodes_rejected(self):
        """Nodes must be strictly increasing."""
        with pytest.raises(InvalidInputError):
            SOEKernel(
                beta=-0.5, q=0, eps=1e-6, delta=0.1, horizon=1.0, step_h=0.5,
                nodes=[2.0, 1.0], weights=[-0.1, -0.2],
            )

    def test_shape_mismatch_rejected(self):
        """Nodes and weights must have the same length."""
        with pytest.raises(InvalidInputError):
            SOEKernel(
                beta=-0.5, q=0, eps=1e-6, delta=0.1, horizon=1.0, step_h=0.5,
                nodes=[1.0, 2.0], weights=[-0.1],
            )
