"""Independent dense brute-force numerics used to verify closed-form results.

Everything here works on plain dense arrays with textbook algorithms
(Gauss-Jordan elimination with partial pivoting, truncated-series matrix
exponential with scaling and squaring, elimination-based nullspaces).  By
design this module never imports the structured closed-form modules, so a
bug over there cannot hide behind a shared code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, SingularMatrixError

__all__ = [
    "dense_mul",
    "dense_inverse",
    "dense_solve",
    "expm_series",
    "sylvester_metric_space",
    "LinearSystemReport",
    "PIVOT_RTOL",
    "NULLSPACE_RTOL",
]

# Pivots at or below PIVOT_RTOL * max|A| are treated as zero during
# elimination; NULLSPACE_RTOL plays the same role for rank decisions, where
# it must robustly separate nullity 2m from 2m +/- 1 at desk scale.
PIVOT_RTOL = 1e-13
NULLSPACE_RTOL = 1e-10


def dense_mul(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def _gauss_jordan(a, rhs):
    """Reduce [a | rhs] in place and return the transformed rhs.

    Partial pivoting on the working matrix; raises on pivots below
    PIVOT_RTOL relative to the largest initial entry of ``a``.
    """
    n = a.shape[0]
    dtype = np.result_type(a.dtype, rhs.dtype, np.float64)
    work = np.hstack([a.astype(dtype, copy=True), rhs.astype(dtype, copy=True)])
    scale = max(1.0, float(np.abs(a).max())) if a.size else 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(work[k:, k])))
        if np.abs(work[p, k]) <= PIVOT_RTOL * scale:
            raise SingularMatrixError(
                f"singular matrix: pivot {k} below threshold", positions=(k,)
            )
        if p != k:
            work[[k, p]] = work[[p, k]]
        work[k] /= work[k, k]
        col = work[:, k].copy()
        col[k] = 0.0
        work -= np.outer(col, work[k])
    return work[:, n:]


def dense_solve(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by Gauss-Jordan elimination with partial pivoting."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("coefficient matrix must be square")
    vector = b.ndim == 1
    rhs = b[:, None] if vector else b
    if rhs.shape[0] != a.shape[0]:
        raise DimensionMismatchError("right-hand side does not match the matrix")
    x = _gauss_jordan(a, rhs)
    return x[:, 0] if vector else x


def dense_inverse(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("only square matrices have inverses")
    return _gauss_jordan(a, np.eye(a.shape[0], dtype=a.dtype))


def _fro(a) -> float:
    return float(np.linalg.norm(a))


def expm_series(a, tol: float = 1e-12) -> np.ndarray:
    """Matrix exponential by scaled truncated Taylor series plus squaring.

    The scaling exponent s is chosen so that ||A / 2^s||_F <= 0.5, the series
    is summed until the term bound drops below ``tol`` (scaled down by 2^s to
    absorb squaring amplification), then the result is squared s times.  For
    a nilpotent input the series terminates and the result is exact.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("expm needs a square matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("expm needs finite entries")
    dtype = np.result_type(a.dtype, np.float64)
    norm = _fro(a)
    s = 0 if norm <= 0.5 else max(0, math.ceil(math.log2(norm / 0.5)))
    b = a.astype(dtype) / (2.0**s)
    n = a.shape[0]
    out = np.eye(n, dtype=dtype)
    term = np.eye(n, dtype=dtype)
    # with ||b|| <= 1/2 the tail after a term of norm t is below 2t
    budget = tol / (2.0 ** (s + 1))
    for k in range(1, 64):
        term = dense_mul(term, b) / k
        out = out + term
        if 2.0 * _fro(term) <= budget * max(1.0, _fro(out)):
            break
    for _ in range(s):
        out = dense_mul(out, out)
    return out


def _rref_nullspace(t, tol_abs):
    """Rank and nullspace basis of ``t`` by row-reduced echelon elimination."""
    work = np.array(t, dtype=np.float64, copy=True)
    n_rows, n_cols = work.shape
    pivot_cols = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = r + int(np.argmax(np.abs(work[r:, c])))
        if np.abs(work[p, c]) <= tol_abs:
            continue
        if p != r:
            work[[r, p]] = work[[p, r]]
        work[r] /= work[r, c]
        col = work[:, c].copy()
        col[r] = 0.0
        work -= np.outer(col, work[r])
        pivot_cols.append(c)
        r += 1
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        x = np.zeros(n_cols)
        x[f] = 1.0
        for row, c in enumerate(pivot_cols):
            x[c] = -work[row, f]
        basis.append(x)
    return len(pivot_cols), basis


@dataclass(frozen=True)
class LinearSystemReport:
    """Rank/nullity record for a homogeneous linear operator.

    ``basis`` holds one dense symmetric matrix per nullspace direction;
    ``rank + nullspace_dim`` equals the domain dimension.
    """

    rank: int
    nullspace_dim: int
    basis: tuple


def sylvester_metric_space(h_dense, max_dim: int = 16) -> LinearSystemReport:
    """Dimension and basis of the symmetric solutions of ``H^T X = X H``.

    Builds the operator ``X -> H^T X - X H`` column by column over the
    n(n+1)/2-dimensional symmetric space and eliminates.  For diagonalizable
    ``H`` with all n eigenvalues distinct the nullity must equal n.  The
    elimination cost grows like n^6, hence the dimension cap.
    """
    h = np.asarray(h_dense, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    n = h.shape[0]
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds the cap {max_dim} for this brute-force solver")
    pairs = [(p, q) for p in range(n) for q in range(p, n)]
    cols = np.empty((n * n, len(pairs)))
    for idx, (p, q) in enumerate(pairs):
        e = np.zeros((n, n))
        e[p, q] = 1.0
        e[q, p] = 1.0
        cols[:, idx] = (h.T @ e - e @ h).ravel()
    tol_abs = NULLSPACE_RTOL * max(1.0, float(np.abs(cols).max()))
    rank, vecs = _rref_nullspace(cols, tol_abs)
    basis = []
    for x in vecs:
        mat = np.zeros((n, n))
        for idx, (p, q) in enumerate(pairs):
            mat[p, q] = x[idx]
            mat[q, p] = x[idx]
        basis.append(mat)
    return LinearSystemReport(rank, len(pairs) - rank, tuple(basis))
