"""Time evolution generated by a diagonalizable block-coupled model.

With hbar = 1 the propagator is assembled from the closed-form eigensystem,

    U(t) = Q exp(-i Lambda t) Q^(-1),

whose off-diagonal entries reduce to Nbar[i, j] * (e^{-i lm[j] t} - e^{-i lp[i] t}).
No timestep integration is involved; the family is solvable, so an
integrator would only add error.  The metric-weighted norm psi^dag Theta psi
is conserved along trajectories while the plain Euclidean norm generally is
not; :func:`evolve` records both for contrast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .models import GzzHamiltonian, WeightVector, to_dense
from .metric import build_theta
from .spectral import eigen_q, factor_inverse

__all__ = ["Trajectory", "propagator", "evolve", "theta_norm"]


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution: states with their metric and Euclidean norms."""

    times: np.ndarray
    states: np.ndarray
    theta_norms: np.ndarray
    l2_norms: np.ndarray

    def __post_init__(self):
        if not (
            len(self.times) == len(self.states) == len(self.theta_norms) == len(self.l2_norms)
        ):
            raise ValueError("trajectory fields must have matching lengths")


def _diag(h: GzzHamiltonian) -> np.ndarray:
    d = np.empty(h.dim)
    d[::2] = h.lambda_plus
    d[1::2] = h.lambda_minus
    return d


def propagator(h: GzzHamiltonian, t: float) -> np.ndarray:
    """Dense complex propagator U(t), assembled entrywise from the factors."""
    lam = _diag(h)
    phases = np.exp(-1j * lam * t)
    u = np.diag(phases)
    factor = eigen_q(h)
    r = 2 * (factor.rows - 1)
    c = 2 * (factor.cols - 1) + 1
    u[r, c] = factor.values * (phases[c] - phases[r])
    return u


def theta_norm(psi, theta) -> float:
    """Quadratic form psi^dag Theta psi, returned as a real number.

    The imaginary part vanishes for symmetric real Theta up to rounding and
    is discarded after a consistency bound.
    """
    psi = np.asarray(psi)
    td = to_dense(theta)
    if psi.shape != (td.shape[0],):
        raise DimensionMismatchError(
            f"state has shape {psi.shape}, metric needs ({td.shape[0]},)"
        )
    value = complex(np.conj(psi) @ (td @ psi))
    if abs(value.imag) > 1e-14 * max(1.0, abs(value.real)):
        raise ValueError("metric quadratic form came out non-real; asymmetric Theta?")
    return value.real


def evolve(h: GzzHamiltonian, psi0, times, w: WeightVector) -> Trajectory:
    """Closed-form trajectory of an initial state over the given times.

    Parameters
    ----------
    h : GzzHamiltonian
        Diagonalizable model (Jordan configurations raise).
    psi0 : complex sequence of length 2m
        Initial state.
    times : increasing sequence of sample times
    w : WeightVector
        Metric weights used for the conserved-norm bookkeeping.

    Returns
    -------
    Trajectory
        States psi(t) = Q e^{-i Lambda t} Q^(-1) psi0 together with the
        metric norm (constant up to rounding) and the Euclidean norm.
    """
    psi0 = np.asarray(psi0, dtype=np.complex128)
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-D sequence")
    if np.any(np.diff(times) <= 0.0):
        raise ValueError("times must be strictly increasing")
    if psi0.shape != (h.dim,):
        raise DimensionMismatchError(
            f"initial state has shape {psi0.shape}, model needs ({h.dim},)"
        )
    factor = eigen_q(h)
    z0 = factor_inverse(factor).apply(psi0)
    lam = _diag(h)
    phases = np.exp(-1j * np.outer(times, lam))
    q = factor.to_dense()
    states = (q @ (phases * z0).T).T
    theta = build_theta(h, w)
    theta_norms = np.array([theta_norm(s, theta) for s in states])
    l2_norms = np.linalg.norm(states, axis=1)
    for arr in (times, states, theta_norms, l2_norms):
        arr.flags.writeable = False
    return Trajectory(times, states, theta_norms, l2_norms)
