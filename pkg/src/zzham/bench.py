"""Benchmark harness: structured closed-form kernels against dense routines.

Times the structured inverse and eigen-factor construction on full-pattern
models and compares them with their dense counterparts (Gauss-Jordan
inversion from the brute-force module; a general dense eigensolver for the
eigen column).  Only orderings and log-log scaling exponents are meaningful
deliverables; absolute times are machine noise.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import oracle
from .algebra import gzz_inverse
from .generate import GeneratorConfig, random_gzz
from .spectral import eigen_q

__all__ = ["BenchRow", "run_benchmarks", "fit_exponent", "STRUCTURED_DIM_CAP", "DENSE_DIM_CAP"]

STRUCTURED_DIM_CAP = 4096
DENSE_DIM_CAP = 512

# the gap only guards against Jordan blow-up during timing; it is scaled
# well below the default so that full patterns stay feasible at any dim
_BENCH_GAP = 1e-3
_BENCH_RANGE = 4.0


@dataclass(frozen=True)
class BenchRow:
    dim: int
    op: str
    structured_ns: int
    dense_ns: int | None


def _time_ns(fn, repetitions: int) -> int:
    """Median wall time of ``fn`` over ``repetitions`` runs, one warm-up."""
    fn()
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(np.median(samples))


def run_benchmarks(dims, repetitions: int = 5, seed: int = 0) -> list:
    """Bench rows for each dim and op in ("inverse", "eigen").

    ``dense_ns`` is None above the dense cap.  Dims must be even and at most
    the structured cap.
    """
    rows = []
    for dim in dims:
        dim = int(dim)
        if dim % 2 != 0 or dim < 2:
            raise ValueError("bench dims must be even and >= 2")
        if dim > STRUCTURED_DIM_CAP:
            raise ValueError(f"dim {dim} above structured cap {STRUCTURED_DIM_CAP}")
        model = random_gzz(
            GeneratorConfig(dim=dim, pattern="full", seed=seed + dim,
                            gap=_BENCH_GAP, range=_BENCH_RANGE)
        )
        structured_inv = _time_ns(lambda: gzz_inverse(model), repetitions)
        structured_eig = _time_ns(lambda: eigen_q(model), repetitions)
        if dim <= DENSE_DIM_CAP:
            dense = model.to_dense()
            dense_inv = _time_ns(lambda: oracle.dense_inverse(dense), repetitions)
            dense_eig = _time_ns(lambda: np.linalg.eig(dense), repetitions)
        else:
            dense_inv = dense_eig = None
        rows.append(BenchRow(dim, "inverse", structured_inv, dense_inv))
        rows.append(BenchRow(dim, "eigen", structured_eig, dense_eig))
    return rows


def fit_exponent(dims, times_ns) -> float:
    """Slope of log(time) against log(dim), the empirical scaling exponent."""
    dims = np.asarray(dims, dtype=np.float64)
    times = np.asarray(times_ns, dtype=np.float64)
    if dims.size < 2:
        raise ValueError("need at least two dims for a scaling fit")
    slope, _ = np.polyfit(np.log(dims), np.log(times), 1)
    return float(slope)


def rows_to_csv(rows) -> str:
    lines = ["dim,op,structured_ns,dense_ns"]
    for row in rows:
        dense = "" if row.dense_ns is None else str(row.dense_ns)
        lines.append(f"{row.dim},{row.op},{row.structured_ns},{dense}")
    return "\n".join(lines) + "\n"
