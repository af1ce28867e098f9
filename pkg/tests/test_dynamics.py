"""Propagators and trajectories: group structure and conserved metric norms."""

import numpy as np
import pytest

from zzham import (
    DimensionMismatchError,
    GzzHamiltonian,
    WeightVector,
    build_theta,
    dyson_factor,
    evolve,
    propagator,
    random_state,
    random_weights,
    theta_norm,
)
from zzham.oracle import dense_inverse, expm_series

from conftest import gzz_corpus

RUNNING = GzzHamiltonian([2.0], [1.0], {(1, 1): 3.0})
UNIT = WeightVector.uniform(1)


def dynamics_corpus():
    return gzz_corpus([2, 4, 8, 16], 3, patterns=("zigzag", "banded:2"), seed0=61)


class TestPropagator:
    def test_time_zero_is_identity(self):
        assert np.array_equal(propagator(RUNNING, 0.0), np.eye(2, dtype=complex))

    def test_pinned_entries(self):
        # series-exponential cross-check fixes the off-diagonal sign:
        # U[0, 1] = 3 (e^{-2it} - e^{-it})
        for t in (0.3, 1.7):
            u = propagator(RUNNING, t)
            assert u[0, 0] == pytest.approx(np.exp(-2j * t))
            assert u[1, 1] == pytest.approx(np.exp(-1j * t))
            assert u[1, 0] == 0.0
            assert u[0, 1] == pytest.approx(3.0 * (np.exp(-2j * t) - np.exp(-1j * t)))
            ref = expm_series(-1j * t * RUNNING.to_dense())
            assert np.linalg.norm(u - ref) <= 1e-12 * np.linalg.norm(ref)

    def test_against_series_on_corpus(self):
        for h in dynamics_corpus():
            hd = h.to_dense()
            t = 20.0 / np.linalg.norm(hd)
            u = propagator(h, t)
            ref = expm_series(-1j * t * hd)
            assert np.linalg.norm(u - ref) <= 1e-8 * np.linalg.norm(ref)

    def test_group_law(self):
        for h in dynamics_corpus()[:6]:
            u1 = propagator(h, 0.9)
            u2 = propagator(h, 2.3)
            u12 = propagator(h, 3.2)
            assert np.linalg.norm(u1 @ u2 - u12) <= 1e-10 * np.linalg.norm(u12)

    def test_negative_time_is_inverse(self):
        for h in dynamics_corpus()[:6]:
            u = propagator(h, 1.1)
            u_inv = propagator(h, -1.1)
            assert np.linalg.norm(u_inv - dense_inverse(u)) <= 1e-10 * np.linalg.norm(u)


class TestThetaNorm:
    def test_identity_metric_is_l2(self):
        psi = np.array([1.0 + 2.0j, -1.0j])
        assert theta_norm(psi, np.eye(2)) == pytest.approx(np.linalg.norm(psi) ** 2)

    def test_pinned_value(self):
        theta = np.array([[1.0, 3.0], [3.0, 10.0]])
        assert theta_norm(np.array([1.0, 0.0]), theta) == 1.0

    def test_zero_state(self):
        assert theta_norm(np.zeros(2), np.eye(2)) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            theta_norm(np.zeros(3), np.eye(2))

    def test_real_within_rounding(self):
        rng = np.random.default_rng(12)
        for h in dynamics_corpus()[:4]:
            theta = build_theta(h, random_weights(h.dim, rng)).theta
            psi = random_state(h.dim, rng)
            value = np.conj(psi) @ (theta @ psi)
            assert abs(value.imag) <= 1e-14 * max(1.0, abs(value.real))
            assert theta_norm(psi, theta) == pytest.approx(value.real)


class TestEvolve:
    def test_diagonal_model_conserves_both_norms(self):
        h = GzzHamiltonian([1.0, 3.0], [2.0, 4.0])
        w = WeightVector.uniform(2)
        rng = np.random.default_rng(13)
        traj = evolve(h, random_state(4, rng), np.linspace(0, 5, 51), w)
        assert np.abs(traj.theta_norms - traj.theta_norms[0]).max() <= 1e-12
        assert np.abs(traj.l2_norms - traj.l2_norms[0]).max() <= 1e-12

    def test_eigenstate_acquires_pure_phase(self):
        traj = evolve(RUNNING, np.array([1.0, 0.0]), np.linspace(0, 3, 31), UNIT)
        assert np.abs(np.abs(traj.states[:, 0]) - 1.0).max() <= 1e-12
        assert np.abs(traj.states[:, 1]).max() == 0.0
        assert np.abs(traj.theta_norms - 1.0).max() <= 1e-12
        assert np.abs(traj.l2_norms - 1.0).max() <= 1e-12

    def test_generic_state_witnesses_nonunitarity(self):
        # theta norm stays put while the Euclidean norm swings visibly
        traj = evolve(RUNNING, np.array([0.0, 1.0]), np.linspace(0, 10, 101), UNIT)
        assert np.abs(traj.theta_norms - traj.theta_norms[0]).max() <= 1e-10 * traj.theta_norms[0]
        assert traj.l2_norms.max() - traj.l2_norms.min() > 1.0

    def test_theta_norm_drift_on_corpus(self):
        rng = np.random.default_rng(14)
        times = np.linspace(0.0, 10.0, 101)
        for h in dynamics_corpus():
            w = random_weights(h.dim, rng)
            traj = evolve(h, random_state(h.dim, rng), times, w)
            drift = np.abs(traj.theta_norms - traj.theta_norms[0]).max()
            assert drift <= 1e-10 * traj.theta_norms[0]

    def test_matches_series_exponential_states(self):
        rng = np.random.default_rng(15)
        times = np.linspace(0.0, 4.0, 9)
        for h in dynamics_corpus()[:6]:
            psi0 = random_state(h.dim, rng)
            traj = evolve(h, psi0, times, WeightVector.uniform(h.m))
            hd = h.to_dense()
            for t, state in zip(traj.times, traj.states):
                ref = expm_series(-1j * t * hd) @ psi0
                assert np.linalg.norm(state - ref) <= 1e-9

    def test_dyson_transform_evolves_diagonally(self):
        # phi = Omega psi follows the diagonal Hermitian partner exactly
        rng = np.random.default_rng(16)
        times = np.linspace(0.0, 6.0, 25)
        for h in dynamics_corpus()[:6]:
            w = random_weights(h.dim, rng)
            omega = dyson_factor(h, w).omega
            psi0 = random_state(h.dim, rng)
            traj = evolve(h, psi0, times, w)
            lam = h.to_dense().diagonal()
            phi0 = omega @ psi0
            for t, state in zip(traj.times, traj.states):
                phi = omega @ state
                ref = np.exp(-1j * lam * t) * phi0
                assert np.linalg.norm(phi - ref) <= 1e-9

    def test_times_must_increase(self):
        with pytest.raises(ValueError, match="increasing"):
            evolve(RUNNING, np.array([1.0, 0.0]), [0.0, 0.0, 1.0], UNIT)

    def test_lengths_agree(self):
        traj = evolve(RUNNING, np.array([1.0, 1.0]), np.linspace(0, 1, 7), UNIT)
        assert len(traj.times) == len(traj.states) == 7
        assert len(traj.theta_norms) == len(traj.l2_norms) == 7
