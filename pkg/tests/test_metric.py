"""The metric family: construction, certification, factorization, bandwidth."""

import numpy as np
import pytest

from zzham import (
    GzzHamiltonian,
    InvalidWeightError,
    NonDiagonalizableError,
    WeightVector,
    bandwidth,
    build_theta,
    certify_positive,
    dyson_factor,
    permute_dense,
    quasi_hermiticity_residual,
    random_weights,
    swap_permutation,
    theta_from_eigenvectors,
)
from zzham.oracle import dense_inverse, dense_mul, sylvester_metric_space

from conftest import gzz_corpus

RUNNING = GzzHamiltonian([2.0], [1.0], {(1, 1): 3.0})
UNIT = WeightVector.uniform(1)


class TestBuildTheta:
    def test_pinned_metric(self):
        theta = build_theta(RUNNING, UNIT).theta
        assert theta.tolist() == [[1.0, 3.0], [3.0, 10.0]]
        lhs = dense_mul(RUNNING.to_dense().T, theta)
        rhs = dense_mul(theta, RUNNING.to_dense())
        assert lhs.tolist() == [[2.0, 6.0], [6.0, 19.0]]
        assert np.array_equal(lhs, rhs)

    def test_exactly_symmetric(self):
        for h in gzz_corpus([4, 12], 3, seed0=11):
            theta = build_theta(h, WeightVector.uniform(h.m, 1.7)).theta
            assert np.array_equal(theta, theta.T)

    def test_diagonal_model_gives_diag_weights(self):
        h = GzzHamiltonian([1.0, 3.0], [2.0, 4.0])
        w = WeightVector([1.0, 2.0, 3.0, 4.0])
        assert np.array_equal(build_theta(h, w).theta, np.diag([1.0, 2.0, 3.0, 4.0]))

    def test_scales_linearly_in_uniform_weights(self):
        theta1 = build_theta(RUNNING, WeightVector.uniform(1, 1.0)).theta
        theta5 = build_theta(RUNNING, WeightVector.uniform(1, 5.0)).theta
        assert np.allclose(theta5, 5.0 * theta1, rtol=0, atol=1e-14)

    def test_weight_dimension_checked(self):
        with pytest.raises(InvalidWeightError):
            build_theta(RUNNING, WeightVector.uniform(3))

    def test_jordan_model_refused(self):
        h = GzzHamiltonian([1.0], [1.0], {(1, 1): 2.0})
        with pytest.raises(NonDiagonalizableError):
            build_theta(h, UNIT)

    def test_rank_one_assembly_agrees(self):
        rng = np.random.default_rng(77)
        for h in gzz_corpus([2, 8, 16], 3, seed0=13):
            w = random_weights(h.dim, rng)
            theta = build_theta(h, w).theta
            other = theta_from_eigenvectors(h, w)
            assert np.linalg.norm(theta - other) <= 1e-13 * np.linalg.norm(theta)

    def test_lies_in_the_sylvester_nullspace(self):
        rng = np.random.default_rng(78)
        for h in gzz_corpus([4, 8], 4, seed0=17, distinct=True):
            w = random_weights(h.dim, rng)
            theta = build_theta(h, w).theta
            hd = h.to_dense()
            defect = np.linalg.norm(hd.T @ theta - theta @ hd)
            assert defect <= 1e-10 * np.linalg.norm(hd) * np.linalg.norm(theta)


class TestResidual:
    def test_built_theta_is_quasi_hermitian(self):
        rng = np.random.default_rng(5)
        for h in gzz_corpus([2, 8, 32], 3, seed0=19):
            w = random_weights(h.dim, rng)
            assert quasi_hermiticity_residual(h, build_theta(h, w)) <= 1e-12

    def test_identity_is_not_a_metric_for_nonnormal_h(self):
        resid = quasi_hermiticity_residual(RUNNING, np.eye(2))
        hd = RUNNING.to_dense()
        expected = np.linalg.norm(hd.T - hd) / (np.linalg.norm(hd) * np.sqrt(2.0))
        assert resid == pytest.approx(expected, rel=1e-12)
        assert resid > 0.1

    def test_commuting_diagonals_give_zero(self):
        h = GzzHamiltonian([1.0, 2.0], [3.0, 4.0])
        assert quasi_hermiticity_residual(h, np.diag([1.0, 2.0, 3.0, 4.0])) == 0.0


class TestCertifyPositive:
    def test_pinned_positive(self):
        assert certify_positive(np.array([[1.0, 3.0], [3.0, 10.0]])).positive

    def test_identity_positive(self):
        assert certify_positive(np.eye(5)).positive

    def test_near_singular_failure_carries_witness(self):
        eps = 1e-6
        theta = np.array([[1.0, 3.0], [3.0, 9.0 - eps]])
        cert = certify_positive(theta)
        assert not cert.positive
        assert cert.witness is not None
        assert cert.witness @ theta @ cert.witness <= 0.0
        assert cert.value == pytest.approx(cert.witness @ theta @ cert.witness)

    def test_indefinite_failure(self):
        cert = certify_positive(np.diag([2.0, -1.0, 3.0]))
        assert not cert.positive and cert.value <= 0.0

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            certify_positive(np.array([[1.0, 2.0], [1.0, 1.0]]))

    def test_all_built_metrics_certify(self):
        rng = np.random.default_rng(6)
        for h in gzz_corpus([4, 16], 3, seed0=23):
            w = random_weights(h.dim, rng)
            assert certify_positive(build_theta(h, w).theta).positive


class TestDysonFactor:
    def test_pinned_factor(self):
        omega = dyson_factor(RUNNING, UNIT).omega
        assert omega.tolist() == [[1.0, 3.0], [0.0, 1.0]]
        herm = dense_mul(dense_mul(omega, RUNNING.to_dense()), dense_inverse(omega))
        assert np.allclose(herm, np.diag([2.0, 1.0]), rtol=0, atol=1e-14)

    def test_factorizes_theta(self):
        rng = np.random.default_rng(7)
        for h in gzz_corpus([2, 8, 16], 3, seed0=29):
            w = random_weights(h.dim, rng)
            omega = dyson_factor(h, w).omega
            theta = build_theta(h, w).theta
            resid = np.linalg.norm(omega.T @ omega - theta)
            assert resid <= 1e-13 * np.linalg.norm(theta)

    def test_diagonal_model_gives_k(self):
        h = GzzHamiltonian([1.0, 3.0], [2.0, 4.0])
        w = WeightVector([4.0, 9.0, 16.0, 25.0])
        assert np.array_equal(dyson_factor(h, w).omega, np.diag([2.0, 3.0, 4.0, 5.0]))

    def test_hermitization_on_corpus(self):
        rng = np.random.default_rng(8)
        for h in gzz_corpus([2, 8, 32], 3, seed0=31):
            w = random_weights(h.dim, rng)
            omega = dyson_factor(h, w).omega
            hd = h.to_dense()
            lam = np.diag(hd.diagonal())
            herm = dense_mul(dense_mul(omega, hd), dense_inverse(omega))
            assert np.linalg.norm(herm - lam) <= 1e-10 * np.linalg.norm(hd)

    def test_weight_rescaling_leaves_hermitization_unchanged(self):
        w1 = WeightVector.uniform(1, 1.0)
        w9 = WeightVector.uniform(1, 9.0)
        hd = RUNNING.to_dense()
        for w in (w1, w9):
            omega = dyson_factor(RUNNING, w).omega
            herm = omega @ hd @ dense_inverse(omega)
            assert np.allclose(herm, np.diag([2.0, 1.0]), rtol=0, atol=1e-13)


class TestBandwidth:
    def test_diagonal_is_zero(self):
        assert bandwidth(np.diag([1.0, 2.0, 3.0])) == 0

    def test_zero_matrix_is_zero(self):
        assert bandwidth(np.zeros((4, 4))) == 0

    def test_threshold_filters_noise(self):
        theta = np.eye(4)
        theta[0, 3] = 1e-15
        assert bandwidth(theta) == 0
        assert bandwidth(theta, tol=1e-16) == 3

    def test_zigzag_band_claims(self):
        rng = np.random.default_rng(9)
        for h in gzz_corpus([8, 16, 32], 4, patterns=("zigzag",), seed0=37):
            w = random_weights(h.dim, rng)
            theta = build_theta(h, w).theta
            assert bandwidth(theta) <= 3
            permuted = permute_dense(theta, swap_permutation(h.m))
            assert bandwidth(permuted) <= 2

    def test_full_pattern_is_generically_full(self):
        h = gzz_corpus([8], 1, patterns=("full",), seed0=41)[0]
        theta = build_theta(h, WeightVector.uniform(h.m)).theta
        assert bandwidth(theta) == h.dim - 1


class TestCompleteness:
    def test_family_dimension_matches_weight_count(self):
        for h in gzz_corpus([2, 4, 6, 8], 3, seed0=43, distinct=True):
            report = sylvester_metric_space(h.to_dense())
            assert report.nullspace_dim == h.dim
