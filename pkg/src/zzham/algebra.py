"""Closed-form algebra on the block-coupled class.

All operations work directly on the sparse model data and never build the
dense 2m x 2m image.  The class is closed under these rules:

    (Lambda + N)(Lambda' + N')  =  Lambda Lambda' + (Lambda N' + N Lambda')
    (Lambda + N)^(-1)           =  Lambda^(-1) - Lambda^(-1) N Lambda^(-1)

and any pattern of vanishing coupling blocks survives multiplication (up to
exact cancellations, which are pruned, so equality weakens to inclusion).

The zig-zag models are the banded members of the class:

* a ZZ model of even dimension equals a block-coupled model with couplings
  on (i, i) and (i, i+1) conjugated by the basis swap +i <-> -i;
* a TZ model is such a model literally, couplings on (i, i) and (i+1, i),
  with no relabelling at all.

Odd-dimensional zig-zag models are embedded by appending a zero row and
column, which adds one exact zero eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, PatternTooWideError, SingularMatrixError
from .models import GzzHamiltonian, SignedIndex, ZigZagHamiltonian

__all__ = [
    "TransposedGzz",
    "gzz_add",
    "gzz_mul",
    "gzz_inverse",
    "gzz_transpose",
    "zz_to_gzz",
    "gzz_to_zz",
    "embed_odd",
    "swap_permutation",
    "permute_dense",
]


@dataclass(frozen=True)
class TransposedGzz:
    """Transpose of a block-coupled model.

    Couplings keep their values ``n[i, j]`` but live at the mirrored dense
    positions ``(2j, 2i-1)``, which is outside the original class (the
    nonzero corner moves from ``(+i, -j)`` to ``(-j, +i)``).  ``base`` is
    the un-transposed model.
    """

    base: GzzHamiltonian

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def lambda_plus(self) -> np.ndarray:
        return self.base.lambda_plus

    @property
    def lambda_minus(self) -> np.ndarray:
        return self.base.lambda_minus

    @property
    def couplings(self) -> dict:
        return self.base.couplings

    def to_dense(self) -> np.ndarray:
        rows, cols, vals = self.base.coupling_arrays()
        n = self.dim
        h = np.zeros((n, n))
        idx = np.arange(self.m)
        h[2 * idx, 2 * idx] = self.lambda_plus
        h[2 * idx + 1, 2 * idx + 1] = self.lambda_minus
        h[2 * (cols - 1) + 1, 2 * (rows - 1)] = vals
        return h


def _check_same_m(a, b):
    if a.m != b.m:
        raise DimensionMismatchError(f"block counts differ: {a.m} vs {b.m}")


def gzz_add(a: GzzHamiltonian, b: GzzHamiltonian) -> GzzHamiltonian:
    """Componentwise sum; coupling sums that cancel exactly are pruned."""
    _check_same_m(a, b)
    ri_a, ci_a, v_a = a.coupling_arrays()
    ri_b, ci_b, v_b = b.coupling_arrays()
    rows = np.concatenate([ri_a, ri_b])
    cols = np.concatenate([ci_a, ci_b])
    vals = np.concatenate([v_a, v_b])
    return GzzHamiltonian(
        a.lambda_plus + b.lambda_plus,
        a.lambda_minus + b.lambda_minus,
        _coalesce(rows, cols, vals, a.m),
    )


def _coalesce(rows, cols, vals, m):
    """Sum duplicate (i, j) entries into canonical sorted arrays."""
    if rows.size == 0:
        return None
    keys = (rows - 1) * m + (cols - 1)
    uniq, inverse = np.unique(keys, return_inverse=True)
    summed = np.zeros(uniq.size)
    np.add.at(summed, inverse, vals)
    out_rows = (uniq // m + 1).astype(np.int64)
    out_cols = (uniq % m + 1).astype(np.int64)
    return out_rows, out_cols, summed


def gzz_mul(a: GzzHamiltonian, b: GzzHamiltonian) -> GzzHamiltonian:
    """Product within the class, linear in the stored couplings.

    The diagonal multiplies componentwise and the couplings obey
    ``n''[i, j] = lambda_plus[i] * n'[i, j] + n[i, j] * lambda_minus'[j]``.
    No dense storage is allocated.
    """
    _check_same_m(a, b)
    ri_a, ci_a, v_a = a.coupling_arrays()
    ri_b, ci_b, v_b = b.coupling_arrays()
    rows = np.concatenate([ri_b, ri_a])
    cols = np.concatenate([ci_b, ci_a])
    vals = np.concatenate(
        [a.lambda_plus[ri_b - 1] * v_b, v_a * b.lambda_minus[ci_a - 1]]
    )
    return GzzHamiltonian(
        a.lambda_plus * b.lambda_plus,
        a.lambda_minus * b.lambda_minus,
        _coalesce(rows, cols, vals, a.m),
    )


def gzz_identity(m: int) -> GzzHamiltonian:
    """The multiplicative unit of the class."""
    ones = np.ones(m)
    return GzzHamiltonian(ones, ones)


def gzz_inverse(a: GzzHamiltonian) -> GzzHamiltonian:
    """Exact inverse: reciprocal diagonal, couplings scaled and negated.

    Requires every diagonal entry to be nonzero; the error lists the signed
    labels of the offending slots.
    """
    zeros = [
        SignedIndex(1, i + 1) for i in np.flatnonzero(a.lambda_plus == 0.0)
    ] + [SignedIndex(-1, i + 1) for i in np.flatnonzero(a.lambda_minus == 0.0)]
    if zeros:
        raise SingularMatrixError(
            "zero diagonal entries at " + ", ".join(str(z) for z in zeros),
            positions=zeros,
        )
    rows, cols, vals = a.coupling_arrays()
    inv_vals = -vals / (a.lambda_plus[rows - 1] * a.lambda_minus[cols - 1])
    return GzzHamiltonian(
        1.0 / a.lambda_plus, 1.0 / a.lambda_minus, (rows, cols, inv_vals)
    )


def gzz_transpose(a):
    """Transpose: an involution between the class and its mirrored twin."""
    if isinstance(a, GzzHamiltonian):
        return TransposedGzz(a)
    if isinstance(a, TransposedGzz):
        return a.base
    raise TypeError(f"cannot transpose {type(a).__name__}")


def swap_permutation(m: int) -> np.ndarray:
    """0-based index array realizing the basis swap +i <-> -i."""
    return np.arange(2 * m).reshape(-1, 2)[:, ::-1].ravel()


def permute_dense(matrix, perm) -> np.ndarray:
    """Conjugate a dense matrix by the permutation given as an index array."""
    matrix = np.asarray(matrix)
    perm = np.asarray(perm)
    return matrix[np.ix_(perm, perm)]


def zz_to_gzz(z: ZigZagHamiltonian):
    """Convert a zig-zag model into the block-coupled class.

    Returns ``(H, perm)`` with ``permute_dense(H.to_dense(), perm)`` equal to
    ``z.to_dense()`` entry for entry.  For the ZZ variant ``a`` interleaves
    as (lambda_minus[1], lambda_plus[1], lambda_minus[2], ...) and ``perm``
    is the pairwise swap; for the TZ variant the interleaving starts on the
    plus slot and ``perm`` is the identity, because TZ matrices already
    carry their couplings on the (+i, -j) corners.

    Odd-dimensional input is embedded first (see :func:`embed_odd`).
    """
    if z.M % 2 == 1:
        z = embed_odd(z)
    m = z.M // 2
    a, c = z.a, z.c
    i = np.arange(1, m + 1)
    if z.variant == "ZZ":
        lam_minus = a[0::2]
        lam_plus = a[1::2]
        diag_rows, diag_cols = i, i
        upper_rows, upper_cols = i[:-1], i[:-1] + 1
        perm = swap_permutation(m)
    else:
        lam_plus = a[0::2]
        lam_minus = a[1::2]
        diag_rows, diag_cols = i, i
        upper_rows, upper_cols = i[:-1] + 1, i[:-1]
        perm = np.arange(2 * m)
    rows = np.concatenate([diag_rows, upper_rows])
    cols = np.concatenate([diag_cols, upper_cols])
    vals = np.concatenate([c[0::2], c[1::2]])
    h = GzzHamiltonian(lam_plus, lam_minus, (rows.astype(np.int64), cols.astype(np.int64), vals))
    return h, perm


def gzz_to_zz(h: GzzHamiltonian, variant: str | None = None) -> ZigZagHamiltonian:
    """Convert a banded block-coupled model back to zig-zag form.

    The coupling pattern must fit one of the two banded shapes: (i, i) and
    (i, i+1) maps to the ZZ variant, (i, i) and (i+1, i) to TZ.  A purely
    block-diagonal pattern fits both and defaults to ZZ.
    """
    rows, cols, vals = h.coupling_arrays()
    off = cols - rows
    fits_zz = np.all((off == 0) | (off == 1))
    fits_tz = np.all((off == 0) | (off == -1))
    if variant is None:
        variant = "ZZ" if fits_zz else ("TZ" if fits_tz else None)
    elif (variant == "ZZ" and not fits_zz) or (variant == "TZ" and not fits_tz):
        variant = None
    if variant is None:
        wide = sorted(
            (int(i), int(j)) for i, j, d in zip(rows, cols, off) if abs(d) > 1
        )
        raise PatternTooWideError(
            "coupling pattern does not fit a zig-zag band"
            + (f"; blocks beyond the band: {wide[:8]}" if wide else
               "; the pattern mixes both off-diagonal directions")
        )
    m = h.m
    a = np.empty(2 * m)
    c = np.zeros(2 * m - 1)
    if variant == "ZZ":
        a[0::2] = h.lambda_minus
        a[1::2] = h.lambda_plus
        diag_slot = 2 * rows - 2          # c_{2i-1} at 0-based 2i-2
        upper_slot = 2 * rows - 1         # c_{2i} at 0-based 2i-1
        mask = off == 0
        c[diag_slot[mask]] = vals[mask]
        c[upper_slot[~mask]] = vals[~mask]
    else:
        a[0::2] = h.lambda_plus
        a[1::2] = h.lambda_minus
        diag_slot = 2 * rows - 2
        lower_slot = 2 * cols - 1         # c_{2j} couples row +(j+1) to col -j
        mask = off == 0
        c[diag_slot[mask]] = vals[mask]
        c[lower_slot[~mask]] = vals[~mask]
    return ZigZagHamiltonian(variant, a, c)


def embed_odd(z: ZigZagHamiltonian) -> ZigZagHamiltonian:
    """Embed an odd-dimensional zig-zag model by a zero row and column.

    The appended slot carries an exact zero eigenvalue whose eigenvector is
    the last basis vector; every closed-form operation except inversion
    remains valid.  Even-dimensional input is returned unchanged.
    """
    if z.M % 2 == 0:
        return z
    return ZigZagHamiltonian(
        z.variant,
        np.concatenate([z.a, [0.0]]),
        np.concatenate([z.c, [0.0]]),
    )
