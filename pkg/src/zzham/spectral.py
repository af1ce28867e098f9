"""Closed-form eigensystems of the block-coupled and zig-zag models.

The eigenvalues of either family are its diagonal entries; no numerics are
involved.  For a diagonalizable block-coupled model the matrix of eigen
columns is unit-diagonal with the same sparsity as the couplings,

    Q = 1 + Nbar,        Nbar[i, j] = -n[i, j] / (lambda_plus[i] - lambda_minus[j])

and the eigenvector matrix of the transpose is Qtilde = 1 - Nbar^T.  Both
factors invert by negating their off-diagonal part, no elimination needed.
A coupling whose two diagonal neighbours coincide produces a Jordan block
and is refused rather than silently blown up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonDiagonalizableError
from .models import (
    JORDAN_RTOL,
    GzzHamiltonian,
    SignedIndex,
    ZigZagHamiltonian,
    jordan_pairs_of,
)

__all__ = [
    "EigenFactor",
    "spectrum",
    "eigen_q",
    "eigen_qtilde",
    "factor_inverse",
    "zz_eigen",
]


@dataclass(frozen=True)
class EigenFactor:
    """Unit-diagonal eigenvector factor with a nilpotent off-diagonal part.

    ``kind`` is ``"Q"`` (entries at the coupling corners ``(2i-1, 2j)``) or
    ``"Qtilde"`` (entries at the mirrored corners ``(2j, 2i-1)``).  ``rows``,
    ``cols`` and ``values`` store the off-diagonal part keyed by 1-based
    block pairs; the exact inverse is the same factor with negated values.
    """

    m: int
    kind: str
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in ("Q", "Qtilde"):
            raise ValueError("kind must be 'Q' or 'Qtilde'")
        for arr in (self.rows, self.cols, self.values):
            arr.flags.writeable = False

    @property
    def dim(self) -> int:
        return 2 * self.m

    @property
    def entries(self) -> dict:
        """Off-diagonal entries as ``{(i, j): value}`` block pairs."""
        return {
            (int(i), int(j)): float(v)
            for i, j, v in zip(self.rows, self.cols, self.values)
        }

    def to_dense(self) -> np.ndarray:
        out = np.eye(self.dim)
        if self.kind == "Q":
            out[2 * (self.rows - 1), 2 * (self.cols - 1) + 1] = self.values
        else:
            out[2 * (self.cols - 1) + 1, 2 * (self.rows - 1)] = self.values
        return out

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-vector product without densifying the factor."""
        out = np.array(vec, dtype=np.result_type(vec.dtype, self.values.dtype))
        if self.kind == "Q":
            r = 2 * (self.rows - 1)
            c = 2 * (self.cols - 1) + 1
        else:
            r = 2 * (self.cols - 1) + 1
            c = 2 * (self.rows - 1)
        np.add.at(out, r, self.values * np.asarray(vec)[c])
        return out


def spectrum(model) -> list:
    """Eigenvalues with their basis labels, in storage order.

    Block-coupled models yield ``SignedIndex`` labels following the
    linearized ordering; zig-zag models yield the signed labels induced by
    their block-coupled image, position k of ``a`` mapping to ``-((k+1)/2)``
    or ``+((k+1)/2)`` depending on parity and variant.
    """
    if isinstance(model, GzzHamiltonian):
        values = np.empty(model.dim)
        values[::2] = model.lambda_plus
        values[1::2] = model.lambda_minus
        return [
            (SignedIndex.from_linear(k + 1), float(values[k]))
            for k in range(model.dim)
        ]
    if isinstance(model, ZigZagHamiltonian):
        out = []
        for k in range(1, model.M + 1):
            block = (k + 1) // 2
            odd = k % 2 == 1
            sign = (-1 if odd else 1) if model.variant == "ZZ" else (1 if odd else -1)
            out.append((SignedIndex(sign, block), float(model.a[k - 1])))
        return out
    raise TypeError(f"no closed-form spectrum for {type(model).__name__}")


def _nbar_values(h: GzzHamiltonian):
    """Eigen-factor entries -n/(lp - lm); refuses Jordan configurations.

    The refusal threshold is the same relative tolerance used by
    ``validate``, so eigensystem failure and Jordan-pair reporting agree.
    """
    rows, cols, vals = h.coupling_arrays()
    lp = h.lambda_plus[rows - 1]
    lm = h.lambda_minus[cols - 1]
    den = lp - lm
    scale = np.maximum(1.0, np.maximum(np.abs(lp), np.abs(lm)))
    bad = np.abs(den) <= JORDAN_RTOL * scale
    if np.any(bad):
        pairs = jordan_pairs_of(h)
        raise NonDiagonalizableError(
            f"Jordan blocks at block pairs {list(pairs)}", pairs=pairs
        )
    return rows, cols, -vals / den


def eigen_q(h: GzzHamiltonian) -> EigenFactor:
    """Eigenvector factor Q with H Q = Q Lambda and unit diagonal.

    Column ``k`` of the dense image is the eigenket of the k-th diagonal
    entry, normalized so its own component equals one.  Raises
    :class:`NonDiagonalizableError` listing the Jordan pairs when a coupling
    connects two coinciding diagonal entries.
    """
    rows, cols, values = _nbar_values(h)
    return EigenFactor(h.m, "Q", rows.copy(), cols.copy(), values)


def eigen_qtilde(h: GzzHamiltonian) -> EigenFactor:
    """Eigenvector factor of the transpose: H^T Qtilde = Qtilde Lambda.

    Equal to the transposed inverse of Q: the off-diagonal part is
    -Nbar^T, i.e. entries ``+n/(lp - lm)`` at the mirrored corners.
    """
    rows, cols, values = _nbar_values(h)
    return EigenFactor(h.m, "Qtilde", rows.copy(), cols.copy(), -values)


def factor_inverse(f: EigenFactor) -> EigenFactor:
    """Exact inverse of a unit-diagonal factor: negate the nilpotent part."""
    return EigenFactor(f.m, f.kind, f.rows, f.cols, -f.values)


def zz_eigen(z: ZigZagHamiltonian) -> ZigZagHamiltonian:
    """Eigenvector matrix of a TZ model, itself arranged in TZ shape.

    Returns ``V = TZ(p, q)`` with unit diagonal ``p`` and
    ``z.to_dense() @ V.to_dense() == V.to_dense() @ diag(a)`` column by
    column.  Entry ``q[k]`` couples the odd-indexed neighbour ``a_odd`` (the
    row of the dense slot) to the even-indexed one ``a_even`` (its column):

        q[k] = -c[k] / (a_odd - a_even)

    which alternates the denominator's orientation with the parity of k.
    Couplings across a degenerate neighbour pair are refused with the
    offending positions.
    """
    if z.variant != "TZ":
        raise ValueError(
            "zz_eigen solves the TZ eigenproblem; transpose ZZ models first"
        )
    a, c = z.a, z.c
    M = z.M
    if M == 1:
        return ZigZagHamiltonian("TZ", np.ones(1), np.zeros(0))
    k = np.arange(1, M)
    odd_pos = np.where(k % 2 == 1, k, k + 1)
    even_pos = np.where(k % 2 == 1, k + 1, k)
    den = a[odd_pos - 1] - a[even_pos - 1]
    scale = np.maximum(1.0, np.maximum(np.abs(a[:-1]), np.abs(a[1:])))
    bad = (np.abs(den) <= JORDAN_RTOL * scale) & (c != 0.0)
    if np.any(bad):
        positions = [int(p) for p in k[bad]]
        raise NonDiagonalizableError(
            f"degenerate neighbours under nonzero couplings at k={positions}",
            pairs=tuple((p, p + 1) for p in positions),
        )
    q = np.zeros(M - 1)
    nz = c != 0.0
    q[nz] = -c[nz] / den[nz]
    return ZigZagHamiltonian("TZ", np.ones(M), q)
