"""Core model types: block-coupled and zig-zag Hamiltonians.

The block-coupled family lives on a Hilbert space of even dimension ``2m``
whose basis is labelled in signed pairs ``{+1, -1, +2, -2, ..., +m, -m}``.
A model is ``H = Lambda + N`` where ``Lambda`` is diagonal and ``N`` is a
degree-2 nilpotent built from 2x2 blocks whose only nonzero corner sits at
row ``+i``, column ``-j``.  The linearization of the labels is fixed once
and for all:

    (+i) -> 2i - 1,   (-i) -> 2i          (1-based)

so ``lambda_plus[i]`` occupies dense position ``(2i-1, 2i-1)``,
``lambda_minus[i]`` occupies ``(2i, 2i)``, and a coupling ``n[i, j]``
occupies ``(2i-1, 2j)``.

The zig-zag family is the sparse-tridiagonal pair ZZ / TZ parametrized by a
diagonal vector ``a`` (its spectrum) and an off-diagonal vector ``c``.  The
two variants are transposes of each other for identical parameters.

All types are immutable values after construction and safe to share between
threads.  Entries are real; complex scalars only appear in states and
propagators (see :mod:`zzham.dynamics`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidWeightError, ModelFormatError

__all__ = [
    "SignedIndex",
    "GzzHamiltonian",
    "ZigZagHamiltonian",
    "WeightVector",
    "ValidationReport",
    "JORDAN_RTOL",
    "validate",
    "to_dense",
    "model_to_dict",
    "model_from_dict",
    "model_to_json",
    "model_from_json",
    "save_model",
    "load_model",
]

# Relative tolerance used to decide when two diagonal entries "coincide"
# (Jordan-pair detection and near-degenerate denominators).  The scale is
# max(1, |x|, |y|) so that tiny spectra do not produce spurious matches.
JORDAN_RTOL = 1e-12


def _degenerate(x, y):
    return abs(x - y) <= JORDAN_RTOL * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class SignedIndex:
    """Basis label ``+i`` or ``-i`` of the paired ordering ``{+1, -1, ...}``."""

    sign: int
    block: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.block < 1:
            raise ValueError("block index is 1-based and must be >= 1")

    @property
    def linear(self) -> int:
        """1-based position in the linearized basis: (+i) -> 2i-1, (-i) -> 2i."""
        return 2 * self.block - 1 if self.sign > 0 else 2 * self.block

    @classmethod
    def from_linear(cls, k: int) -> "SignedIndex":
        if k < 1:
            raise ValueError("linear index is 1-based and must be >= 1")
        return cls(1 if k % 2 == 1 else -1, (k + 1) // 2)

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}{self.block}"


def _as_real_vector(values, name, min_len=1):
    probe = np.asarray(values)
    if np.iscomplexobj(probe):
        raise ModelFormatError(f"{name}: complex entries are not supported")
    try:
        # astype always copies, so freezing never touches caller-owned data
        arr = probe.astype(np.float64)
    except (TypeError, ValueError) as exc:
        raise ModelFormatError(f"{name}: entries must be real numbers") from exc
    if arr.ndim != 1 or arr.size < min_len:
        raise ModelFormatError(f"{name}: expected a 1-D sequence of length >= {min_len}")
    if not np.all(np.isfinite(arr)):
        raise ModelFormatError(f"{name}: entries must be finite")
    arr.flags.writeable = False
    return arr


def _canonical_couplings(couplings, m):
    """Normalize coupling input to sorted (rows, cols, values) arrays.

    Accepts a mapping ``{(i, j): value}``, an iterable of ``(i, j, value)``
    triples, a ``(rows, cols, values)`` array triple, or ``None``.  Indices
    are 1-based block indices.  Exact zeros are pruned so the stored pattern
    is canonical; duplicates are rejected.
    """
    if couplings is None:
        rows = cols = np.zeros(0, dtype=np.int64)
        vals = np.zeros(0, dtype=np.float64)
    elif isinstance(couplings, Mapping):
        items = sorted(couplings.items())
        rows = np.array([i for (i, _), _ in items], dtype=np.int64)
        cols = np.array([j for (_, j), _ in items], dtype=np.int64)
        vals = np.array([v for _, v in items], dtype=np.float64)
    elif (
        isinstance(couplings, tuple)
        and len(couplings) == 3
        and all(isinstance(part, np.ndarray) for part in couplings)
    ):
        rows = np.asarray(couplings[0], dtype=np.int64)
        cols = np.asarray(couplings[1], dtype=np.int64)
        vals = np.asarray(couplings[2], dtype=np.float64)
    else:
        triples = sorted((int(i), int(j), float(v)) for i, j, v in couplings)
        rows = np.array([t[0] for t in triples], dtype=np.int64)
        cols = np.array([t[1] for t in triples], dtype=np.int64)
        vals = np.array([t[2] for t in triples], dtype=np.float64)

    if np.iscomplexobj(vals):
        raise ModelFormatError("couplings: complex entries are not supported")
    if not (rows.shape == cols.shape == vals.shape) or rows.ndim != 1:
        raise ModelFormatError("couplings: rows, cols and values must align")
    if rows.size:
        if rows.min() < 1 or cols.min() < 1 or rows.max() > m or cols.max() > m:
            raise ModelFormatError(f"couplings: block indices must lie in 1..{m}")
        if not np.all(np.isfinite(vals)):
            raise ModelFormatError("couplings: values must be finite")
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        keys = (rows - 1) * m + (cols - 1)
        if np.any(np.diff(keys) == 0):
            raise ModelFormatError("couplings: duplicate (i, j) entries")
        keep = vals != 0.0
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
    for arr in (rows, cols, vals):
        arr.flags.writeable = False
    return rows, cols, vals


class GzzHamiltonian:
    """Diagonal spectrum plus a sparse degree-2 nilpotent coupling block.

    Parameters
    ----------
    lambda_plus, lambda_minus : sequence of m reals
        Diagonal entries on the ``+i`` and ``-i`` slots.
    couplings : mapping ``{(i, j): value}`` or iterable of ``(i, j, value)``
        Sparse coupling map with 1-based block indices; absent means zero.
        Exact zeros are pruned on construction.
    """

    __slots__ = ("lambda_plus", "lambda_minus", "_rows", "_cols", "_vals")

    def __init__(self, lambda_plus, lambda_minus, couplings=None):
        lp = _as_real_vector(lambda_plus, "lambda_plus")
        lm = _as_real_vector(lambda_minus, "lambda_minus")
        if lp.size != lm.size:
            raise ModelFormatError("lambda_plus and lambda_minus must have equal length")
        rows, cols, vals = _canonical_couplings(couplings, lp.size)
        object.__setattr__(self, "lambda_plus", lp)
        object.__setattr__(self, "lambda_minus", lm)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_cols", cols)
        object.__setattr__(self, "_vals", vals)

    def __setattr__(self, name, value):
        raise AttributeError("GzzHamiltonian is immutable")

    # -- basic views ---------------------------------------------------

    @property
    def m(self) -> int:
        """Number of 2x2 blocks."""
        return self.lambda_plus.size

    @property
    def dim(self) -> int:
        """Dense dimension 2m."""
        return 2 * self.m

    @property
    def couplings(self) -> dict:
        """Coupling map as a plain dict ``{(i, j): value}`` (copies)."""
        return {
            (int(i), int(j)): float(v)
            for i, j, v in zip(self._rows, self._cols, self._vals)
        }

    @property
    def pattern(self) -> frozenset:
        """Set of (i, j) block pairs carrying a nonzero coupling."""
        return frozenset(zip(self._rows.tolist(), self._cols.tolist()))

    def coupling_arrays(self):
        """Canonical ``(rows, cols, values)`` arrays, 1-based, read-only."""
        return self._rows, self._cols, self._vals

    # -- conversions ---------------------------------------------------

    def to_dense(self) -> np.ndarray:
        """Dense 2m x 2m image with the fixed signed-index placement."""
        n = self.dim
        h = np.zeros((n, n))
        idx = np.arange(self.m)
        h[2 * idx, 2 * idx] = self.lambda_plus
        h[2 * idx + 1, 2 * idx + 1] = self.lambda_minus
        h[2 * (self._rows - 1), 2 * (self._cols - 1) + 1] = self._vals
        return h

    @classmethod
    def from_dense(cls, matrix) -> "GzzHamiltonian":
        """Reconstruct a model from its dense image.

        Raises :class:`ModelFormatError` if any entry sits outside the
        admissible placement (diagonal plus ``(+i, -j)`` corners).
        """
        h = np.asarray(matrix, dtype=np.float64)
        if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] % 2 != 0:
            raise ModelFormatError("expected a square matrix of even dimension")
        m = h.shape[0] // 2
        lp = h[::2, ::2].diagonal().copy()
        lm = h[1::2, 1::2].diagonal().copy()
        coup = h[::2, 1::2]
        allowed = np.zeros_like(h, dtype=bool)
        allowed[np.diag_indices_from(h)] = True
        allowed[np.repeat(2 * np.arange(m), m), np.tile(2 * np.arange(m) + 1, m)] = True
        if np.any(h[~allowed] != 0.0):
            raise ModelFormatError("matrix entries outside the block pattern")
        ri, ci = np.nonzero(coup)
        return cls(lp, lm, (ri.astype(np.int64) + 1, ci.astype(np.int64) + 1,
                            coup[ri, ci]))

    # -- value semantics -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GzzHamiltonian):
            return NotImplemented
        return (
            np.array_equal(self.lambda_plus, other.lambda_plus)
            and np.array_equal(self.lambda_minus, other.lambda_minus)
            and np.array_equal(self._rows, other._rows)
            and np.array_equal(self._cols, other._cols)
            and np.array_equal(self._vals, other._vals)
        )

    def __repr__(self):
        return (
            f"GzzHamiltonian(m={self.m}, couplings={len(self._vals)}, "
            f"lambda_plus={self.lambda_plus!r})"
        )


class ZigZagHamiltonian:
    """Sparse-tridiagonal zig-zag model: variant ``"ZZ"`` or ``"TZ"``.

    The dense placement of the off-diagonal vector ``c`` alternates with the
    parity of its index k (1-based):

    ========  ===========  ===========
    variant   k odd        k even
    ========  ===========  ===========
    ZZ        (k+1, k)     (k, k+1)
    TZ        (k, k+1)     (k+1, k)
    ========  ===========  ===========

    so ``TZ(a, c)`` is exactly the transpose of ``ZZ(a, c)``.  The spectrum
    is the diagonal vector ``a`` itself, and the model carries ``2M - 1``
    independent real parameters.
    """

    __slots__ = ("variant", "a", "c")

    VARIANTS = ("ZZ", "TZ")

    def __init__(self, variant, a, c):
        if variant not in self.VARIANTS:
            raise ModelFormatError(f"variant must be one of {self.VARIANTS}")
        a_arr = _as_real_vector(a, "a")
        c_arr = _as_real_vector(c, "c", min_len=0)
        if c_arr.size != a_arr.size - 1:
            raise ModelFormatError("c: expected length M - 1")
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "a", a_arr)
        object.__setattr__(self, "c", c_arr)

    def __setattr__(self, name, value):
        raise AttributeError("ZigZagHamiltonian is immutable")

    @property
    def M(self) -> int:
        return self.a.size

    @property
    def dim(self) -> int:
        return self.a.size

    def _c_positions(self):
        """1-based (row, col) positions of each c entry for this variant."""
        k = np.arange(1, self.M)
        odd = k % 2 == 1
        if self.variant == "ZZ":
            rows = np.where(odd, k + 1, k)
            cols = np.where(odd, k, k + 1)
        else:
            rows = np.where(odd, k, k + 1)
            cols = np.where(odd, k + 1, k)
        return rows, cols

    def to_dense(self) -> np.ndarray:
        h = np.diag(self.a).copy()
        if self.M > 1:
            rows, cols = self._c_positions()
            h[rows - 1, cols - 1] = self.c
        return h

    def transpose(self) -> "ZigZagHamiltonian":
        """The transposed model: same parameters, opposite variant."""
        other = "TZ" if self.variant == "ZZ" else "ZZ"
        return ZigZagHamiltonian(other, self.a, self.c)

    @classmethod
    def from_dense(cls, matrix, variant=None) -> "ZigZagHamiltonian":
        """Reconstruct from a dense image, auto-detecting the variant.

        A purely diagonal matrix is reported as ``"ZZ"`` unless ``variant``
        says otherwise.
        """
        h = np.asarray(matrix, dtype=np.float64)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ModelFormatError("expected a square matrix")
        candidates = (variant,) if variant else cls.VARIANTS
        for var in candidates:
            model = cls(var, h.diagonal().copy(), np.zeros(max(h.shape[0] - 1, 0)))
            rows, cols = model._c_positions()
            c = h[rows - 1, cols - 1] if h.shape[0] > 1 else np.zeros(0)
            trial = cls(var, h.diagonal().copy(), c)
            if np.array_equal(trial.to_dense(), h):
                return trial
        raise ModelFormatError("matrix entries outside the zig-zag pattern")

    def __eq__(self, other):
        if not isinstance(other, ZigZagHamiltonian):
            return NotImplemented
        return (
            self.variant == other.variant
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.c, other.c)
        )

    def __repr__(self):
        return f"ZigZagHamiltonian({self.variant!r}, M={self.M})"


@dataclass(frozen=True)
class WeightVector:
    """Strictly positive metric weights, ordered by the linearized index.

    ``kappa_sq[k]`` belongs to the basis slot ``SignedIndex.from_linear(k+1)``,
    i.e. the order is (kappa^2_{+1}, kappa^2_{-1}, kappa^2_{+2}, ...).
    """

    kappa_sq: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.kappa_sq, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 2 or arr.size % 2 != 0:
            raise InvalidWeightError("kappa_sq must be a 1-D vector of even length 2m")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise InvalidWeightError("kappa_sq entries must be finite and strictly positive")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "kappa_sq", arr)

    @classmethod
    def uniform(cls, m: int, value: float = 1.0) -> "WeightVector":
        return cls(np.full(2 * m, float(value)))

    @property
    def m(self) -> int:
        return self.kappa_sq.size // 2

    @property
    def dim(self) -> int:
        return self.kappa_sq.size

    @property
    def kappa(self) -> np.ndarray:
        """Positive square roots of the weights."""
        return np.sqrt(self.kappa_sq)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`: a pure report, never an exception.

    ``jordan_pairs``   obstructions to diagonalizability: couplings whose two
                       diagonal neighbours coincide.
    ``zero_diagonal``  labels of exactly-zero diagonal entries (these block
                       inversion but nothing else).
    ``degeneracies``   groups of labels sharing a diagonal value; purely
                       informational, degeneracy alone is harmless.
    """

    jordan_pairs: tuple
    zero_diagonal: tuple
    degeneracies: tuple

    @property
    def is_diagonalizable(self) -> bool:
        return not self.jordan_pairs

    @property
    def is_invertible(self) -> bool:
        return not self.zero_diagonal

    def __str__(self):
        return (
            f"ValidationReport(jordan_pairs={list(self.jordan_pairs)}, "
            f"zero_diagonal={[str(z) for z in self.zero_diagonal]}, "
            f"degeneracies={len(self.degeneracies)} group(s))"
        )


def _degenerate_groups(labels, values):
    """Group labels whose values coincide within the Jordan tolerance."""
    order = np.argsort(values, kind="stable")
    groups = []
    current = [order[0]] if len(order) else []
    for prev, nxt in zip(order[:-1], order[1:]):
        if _degenerate(values[prev], values[nxt]):
            current.append(nxt)
        else:
            if len(current) > 1:
                groups.append(tuple(labels[k] for k in current))
            current = [nxt]
    if len(current) > 1:
        groups.append(tuple(labels[k] for k in current))
    return tuple(groups)


def jordan_pairs_of(model: GzzHamiltonian) -> tuple:
    """Block pairs (i, j) with a nonzero coupling and coinciding diagonals."""
    rows, cols, _ = model.coupling_arrays()
    lp = model.lambda_plus[rows - 1]
    lm = model.lambda_minus[cols - 1]
    scale = np.maximum(1.0, np.maximum(np.abs(lp), np.abs(lm)))
    mask = np.abs(lp - lm) <= JORDAN_RTOL * scale
    return tuple((int(i), int(j)) for i, j in zip(rows[mask], cols[mask]))


def validate(model) -> ValidationReport:
    """Collect Jordan pairs, zero diagonals and degeneracies for a model."""
    if isinstance(model, GzzHamiltonian):
        pairs = jordan_pairs_of(model)
        labels = [SignedIndex.from_linear(k + 1) for k in range(model.dim)]
        diag = np.empty(model.dim)
        diag[::2] = model.lambda_plus
        diag[1::2] = model.lambda_minus
    elif isinstance(model, ZigZagHamiltonian):
        a, c = model.a, model.c
        pairs = tuple(
            (k + 1, k + 2)
            for k in range(model.M - 1)
            if c[k] != 0.0 and _degenerate(a[k], a[k + 1])
        )
        labels = list(range(1, model.M + 1))
        diag = a
    else:
        raise TypeError(f"cannot validate {type(model).__name__}")
    zero = tuple(labels[k] for k in np.flatnonzero(diag == 0.0))
    return ValidationReport(pairs, zero, _degenerate_groups(labels, diag))


def to_dense(obj) -> np.ndarray:
    """Dense image of any model-like object (identity on ndarrays)."""
    if isinstance(obj, np.ndarray):
        return obj
    if hasattr(obj, "to_dense"):
        return obj.to_dense()
    raise TypeError(f"cannot convert {type(obj).__name__} to a dense matrix")


# ---------------------------------------------------------------------------
# JSON model files

GZZ_FORMAT = "gzz-model/v1"
ZZ_FORMAT = "zz-model/v1"


def model_to_dict(model) -> dict:
    if isinstance(model, GzzHamiltonian):
        rows, cols, vals = model.coupling_arrays()
        return {
            "format": GZZ_FORMAT,
            "m": model.m,
            "lambda_plus": model.lambda_plus.tolist(),
            "lambda_minus": model.lambda_minus.tolist(),
            "couplings": [
                {"i": int(i), "j": int(j), "value": float(v)}
                for i, j, v in zip(rows, cols, vals)
            ],
        }
    if isinstance(model, ZigZagHamiltonian):
        return {
            "format": ZZ_FORMAT,
            "variant": model.variant,
            "a": model.a.tolist(),
            "c": model.c.tolist(),
        }
    raise TypeError(f"cannot serialize {type(model).__name__}")


def _require(data, field, kinds, context):
    if field not in data:
        raise ModelFormatError(f"{context}: missing field '{field}'")
    value = data[field]
    if not isinstance(value, kinds):
        raise ModelFormatError(f"{context}: field '{field}' has the wrong type")
    return value


def model_from_dict(data) -> "GzzHamiltonian | ZigZagHamiltonian":
    if not isinstance(data, dict):
        raise ModelFormatError("model: expected a JSON object")
    fmt = _require(data, "format", str, "model")
    if fmt == GZZ_FORMAT:
        m = _require(data, "m", int, fmt)
        lp = _require(data, "lambda_plus", list, fmt)
        lm = _require(data, "lambda_minus", list, fmt)
        if len(lp) != m or len(lm) != m:
            raise ModelFormatError(f"{fmt}: field 'lambda_plus'/'lambda_minus' must have length m")
        entries = _require(data, "couplings", list, fmt)
        triples = []
        for k, entry in enumerate(entries):
            if not isinstance(entry, dict):
                raise ModelFormatError(f"{fmt}: field 'couplings[{k}]' must be an object")
            ctx = f"{fmt}: couplings[{k}]"
            triples.append(
                (
                    _require(entry, "i", int, ctx),
                    _require(entry, "j", int, ctx),
                    _require(entry, "value", (int, float), ctx),
                )
            )
        return GzzHamiltonian(lp, lm, triples)
    if fmt == ZZ_FORMAT:
        variant = _require(data, "variant", str, fmt)
        a = _require(data, "a", list, fmt)
        c = _require(data, "c", list, fmt)
        return ZigZagHamiltonian(variant, a, c)
    raise ModelFormatError(f"model: unknown format '{fmt}'")


def model_to_json(model) -> str:
    """Canonical JSON text: fixed key order, two-space indent, newline at end.

    Serialization is deterministic, so equal models produce byte-identical
    files; floats use Python's shortest round-trip representation, which is
    bit-faithful on reload.
    """
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def model_from_json(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return model_from_dict(data)


def save_model(model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(model_to_json(model))


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(fh.read())
