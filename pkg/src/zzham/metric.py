"""Construction and certification of the inner-product metric family.

For a diagonalizable model every admissible metric is

    Theta = Qtilde K^2 Qtilde^T

with K^2 an arbitrary positive diagonal collecting the 2m weights, so the
whole family is parametrized by the weight vector.  The same matrix is the
rank-one sum over the columns v_k of Qtilde,

    Theta = sum_k  kappa_sq[k] * outer(v_k, v_k),

which is used as a cross-check but never as the primary path.  The Dyson
factor Omega = K Qtilde^T satisfies Omega^T Omega = Theta and conjugates the
model to its diagonal Hermitian partner: Omega H Omega^(-1) = Lambda.

Theta is materialized densely (it is generically full); for banded coupling
patterns it collapses to a narrow band, which :func:`bandwidth` measures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatchError, InvalidWeightError
from .models import GzzHamiltonian, WeightVector, to_dense
from .spectral import eigen_qtilde

__all__ = [
    "MetricOperator",
    "DysonFactor",
    "PositivityCertificate",
    "build_theta",
    "theta_from_eigenvectors",
    "quasi_hermiticity_residual",
    "certify_positive",
    "dyson_factor",
    "bandwidth",
]

BANDWIDTH_RTOL = 1e-12


@dataclass(frozen=True)
class MetricOperator:
    """A positive-definite metric together with its defining data.

    ``theta`` is symmetric entry for entry by construction; ``source`` is
    the model it certifies as quasi-Hermitian.
    """

    theta: np.ndarray
    weights: WeightVector
    source: GzzHamiltonian

    def to_dense(self) -> np.ndarray:
        return self.theta


@dataclass(frozen=True)
class DysonFactor:
    """Invertible factor with ``omega.T @ omega`` equal to the metric."""

    omega: np.ndarray
    weights: WeightVector
    source: GzzHamiltonian

    def to_dense(self) -> np.ndarray:
        return self.omega


@dataclass(frozen=True)
class PositivityCertificate:
    """Outcome of :func:`certify_positive`.

    On failure ``witness`` is a direction with ``witness @ theta @ witness``
    equal to ``value`` <= 0 (up to rounding).
    """

    positive: bool
    witness: np.ndarray | None = None
    value: float | None = None

    def __bool__(self):
        return self.positive


def _check_weights(h: GzzHamiltonian, w: WeightVector):
    if not isinstance(w, WeightVector):
        w = WeightVector(np.asarray(w, dtype=np.float64))
    if w.dim != h.dim:
        raise InvalidWeightError(
            f"weight vector has dimension {w.dim}, model needs {h.dim}"
        )
    return w


def build_theta(h: GzzHamiltonian, w: WeightVector) -> MetricOperator:
    """Metric from the factored form Qtilde K^2 Qtilde^T.

    Parameters
    ----------
    h : GzzHamiltonian
        Must be diagonalizable; Jordan configurations raise.
    w : WeightVector
        Strictly positive weights, one per basis slot.

    Returns
    -------
    MetricOperator
        Exactly symmetric, positive definite, and quasi-Hermitian for ``h``:
        the residual of ``H^T Theta = Theta H`` stays at rounding level.
    """
    w = _check_weights(h, w)
    qt = eigen_qtilde(h).to_dense()
    raw = (qt * w.kappa_sq) @ qt.T
    # averaging with the transpose makes the symmetry exact, not just close
    theta = (raw + raw.T) / 2.0
    theta.flags.writeable = False
    return MetricOperator(theta, w, h)


def theta_from_eigenvectors(h: GzzHamiltonian, w: WeightVector) -> np.ndarray:
    """Rank-one assembly of the metric from the Qtilde columns.

    Cross-check route only; agrees with :func:`build_theta` to rounding.
    """
    w = _check_weights(h, w)
    qt = eigen_qtilde(h).to_dense()
    return np.einsum("ik,k,jk->ij", qt, w.kappa_sq, qt)


def quasi_hermiticity_residual(h, theta) -> float:
    """Scaled commutation defect ||H^T Theta - Theta H|| / (||H|| ||Theta||).

    Zero signals exact quasi-Hermiticity; both arguments may be models,
    metric operators or plain dense arrays.
    """
    hd = to_dense(h)
    td = to_dense(theta)
    if hd.shape != td.shape:
        raise DimensionMismatchError(
            f"shape mismatch: {hd.shape} vs {td.shape}"
        )
    denom = np.linalg.norm(hd) * np.linalg.norm(td)
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(hd.T @ td - td @ hd) / denom)


def certify_positive(theta) -> PositivityCertificate:
    """Certify positive definiteness by a pivoted symmetric factorization.

    Factors ``Theta = L D L^T`` (Bunch-Kaufman pivoting) and inspects the
    1x1 and 2x2 blocks of D; a block eigenvalue <= 0 yields a witness
    direction with a non-positive quadratic form.  Strict definiteness is
    required: an exactly singular direction counts as failure.
    """
    td = np.asarray(to_dense(theta), dtype=np.float64)
    if td.ndim != 2 or td.shape[0] != td.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    if not np.array_equal(td, td.T):
        raise ValueError("certify_positive needs an exactly symmetric input")
    lu, d, _perm = scipy.linalg.ldl(td)
    n = td.shape[0]
    k = 0
    while k < n:
        two_by_two = k + 1 < n and d[k + 1, k] != 0.0
        if two_by_two:
            block = d[k : k + 2, k : k + 2]
            eigvals, eigvecs = np.linalg.eigh(block)
            lam = float(eigvals[0])
            u_block = eigvecs[:, 0]
            width = 2
        else:
            lam = float(d[k, k])
            u_block = np.array([1.0])
            width = 1
        if lam <= 0.0:
            u = np.zeros(n)
            u[k : k + width] = u_block
            witness = np.linalg.solve(lu.T, u)
            return PositivityCertificate(False, witness, float(witness @ td @ witness))
        k += width
    return PositivityCertificate(True)


def dyson_factor(h: GzzHamiltonian, w: WeightVector) -> DysonFactor:
    """Dyson factor Omega = K Qtilde^T for the chosen weights.

    ``omega.T @ omega`` reproduces the metric of :func:`build_theta`, and
    conjugation hermitizes the model onto its diagonal:
    ``omega @ H @ inv(omega) = Lambda``.  Rescaling all weights by a common
    factor leaves that conjugation unchanged.
    """
    w = _check_weights(h, w)
    qt = eigen_qtilde(h).to_dense()
    omega = w.kappa[:, None] * qt.T
    omega.flags.writeable = False
    return DysonFactor(omega, w, h)


def bandwidth(theta, tol: float = BANDWIDTH_RTOL) -> int:
    """Largest |row - col| carrying an entry above ``tol`` * max|Theta|."""
    td = np.asarray(to_dense(theta))
    if td.ndim != 2 or td.shape[0] != td.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    top = np.abs(td).max() if td.size else 0.0
    if top == 0.0:
        return 0
    r, c = np.nonzero(np.abs(td) > tol * top)
    return int(np.abs(r - c).max()) if r.size else 0
