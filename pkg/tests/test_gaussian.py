"""Exact linear-Gaussian algebra and path cancellation."""

from fractions import Fraction as F

import pytest

from kassoc.gaussian import (
    GaussianError,
    GaussianSystem,
    mat_inverse,
    mat_mul,
    partial_correlation_zero,
)


def chain_system():
    # X -> Z -> Y with unit weights and noises
    return GaussianSystem(
        ("X", "Z", "Y"),
        {("Z", "X"): F(1), ("Y", "Z"): F(1)},
        {"X": F(1), "Z": F(1), "Y": F(1)},
    )


def cancelling_system(alpha=F(1), beta=F(1)):
    # Z := alpha X, Y := beta Z - gamma X with gamma = alpha * beta
    return GaussianSystem(
        ("X", "Z", "Y"),
        {("Z", "X"): alpha, ("Y", "Z"): beta, ("Y", "X"): -alpha * beta},
        {"X": F(1), "Z": F(1), "Y": F(1)},
    )


class TestMatrixAlgebra:
    def test_inverse_roundtrip(self):
        a = [[F(2), F(1)], [F(1), F(1)]]
        ident = mat_mul(a, mat_inverse(a))
        assert ident == [[F(1), F(0)], [F(0), F(1)]]

    def test_inverse_rejects_singular(self):
        with pytest.raises(GaussianError):
            mat_inverse([[F(1), F(1)], [F(1), F(1)]])


class TestSystem:
    def test_rejects_cyclic_coefficients(self):
        with pytest.raises(GaussianError):
            GaussianSystem(
                ("A", "B"),
                {("A", "B"): F(1), ("B", "A"): F(1)},
                {"A": F(1), "B": F(1)},
            )

    def test_rejects_nonpositive_noise(self):
        with pytest.raises(GaussianError):
            GaussianSystem(("A",), {}, {"A": F(0)})

    def test_chain_covariance_exact(self):
        cov = chain_system().covariance()
        # Var(Z) = 1 + 1 = 2, Cov(X, Y) = 1, Var(Y) = 2 + 1 = 3
        assert cov[1][1] == F(2)
        assert cov[0][2] == F(1)
        assert cov[2][2] == F(3)


class TestPartialCorrelation:
    def test_chain_blocks_through_middle(self):
        cov = chain_system().covariance()
        nodes = ("X", "Z", "Y")
        assert partial_correlation_zero(cov, 0, 2, (1,))
        assert not partial_correlation_zero(cov, 0, 2, ())
        del nodes

    def test_cancellation_zeroes_the_marginal(self):
        cov = cancelling_system().covariance()
        assert cov[0][2] == 0
        assert partial_correlation_zero(cov, 0, 2, ())

    def test_cancellation_opens_conditionally(self):
        cov = cancelling_system().covariance()
        assert not partial_correlation_zero(cov, 0, 2, (1,))

    def test_cancellation_for_general_weights(self):
        cov = cancelling_system(F(2, 3), F(-5, 7)).covariance()
        assert cov[0][2] == 0

    def test_noise_scaling_preserves_ci_answers(self):
        base = cancelling_system()
        scaled = GaussianSystem(
            base.nodes,
            base.coefficients,
            {k: 4 * v for k, v in base.noise_variances.items()},
        )
        a, b = base.covariance(), scaled.covariance()
        for x in range(3):
            for y in range(3):
                if x == y:
                    continue
                for s in ((), tuple({0, 1, 2} - {x, y})):
                    assert partial_correlation_zero(
                        a, x, y, s
                    ) == partial_correlation_zero(b, x, y, s)


class TestFourNodeCancellation:
    def test_cancelled_and_open_pairs(self, all_builtins):
        sys4 = all_builtins["cancel4"].gaussian
        cov = sys4.covariance()
        pos = {n: i for i, n in enumerate(sys4.nodes)}
        x, y, z, w = pos["X"], pos["Y"], pos["Z"], pos["W"]
        assert partial_correlation_zero(cov, x, y, ())
        assert partial_correlation_zero(cov, x, w, (z,))
        assert not partial_correlation_zero(cov, x, z, ())
        assert not partial_correlation_zero(cov, z, w, ())
        assert not partial_correlation_zero(cov, w, y, ())
        assert not partial_correlation_zero(cov, x, y, (z,))
