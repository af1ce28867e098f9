"""Command-line front end.

One verb per capability:

    gen       write a seeded random model file
    verify    run the full invariant battery on a model file
    spectrum  print eigenvalues with their basis labels
    metric    build the inner-product metric and emit it as JSON
    evolve    sample a trajectory and emit it as CSV
    bench     time structured kernels against dense routines (CSV)
    convert   translate between the zig-zag and block-coupled file formats

Exit codes: 0 success, 1 verification or computation failure on valid
input, 2 usage or parse errors.  All numeric output round-trips bit
faithfully (17 significant digits in CSV, shortest round-trip floats in
JSON).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import gzz_to_zz, permute_dense, zz_to_gzz
from .bench import run_benchmarks, rows_to_csv
from .dynamics import evolve
from .errors import (
    InvalidWeightError,
    ModelFormatError,
    NonDiagonalizableError,
    PatternTooWideError,
    SingularMatrixError,
)
from .generate import GeneratorConfig, random_gzz, random_state
from .metric import bandwidth, build_theta, certify_positive, quasi_hermiticity_residual
from .models import (
    GzzHamiltonian,
    WeightVector,
    ZigZagHamiltonian,
    load_model,
    model_to_json,
    validate,
)
from .spectral import spectrum
from .verify import verify_model

USAGE_ERROR = 2
CHECK_FAILED = 1


def _write_output(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _load(path):
    try:
        return load_model(path)
    except OSError as exc:
        raise ModelFormatError(f"cannot read '{path}': {exc.strerror or exc}") from exc


def _as_gzz(model):
    """Model plus the permutation mapping its own basis onto the block basis."""
    if isinstance(model, ZigZagHamiltonian):
        return zz_to_gzz(model)
    return model, None


def _parse_kappa(spec: str | None, dim: int) -> WeightVector:
    if spec is None:
        spec = "uniform:1"
    if spec.startswith("uniform:"):
        try:
            value = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ModelFormatError(f"bad --kappa value '{spec}'") from exc
        return WeightVector(np.full(dim, value))
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ModelFormatError(f"cannot read kappa file '{spec}': {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"kappa file '{spec}': invalid JSON at line {exc.lineno}: {exc.msg}"
        ) from exc
    if isinstance(data, dict):
        data = data.get("kappa_sq")
    if not isinstance(data, list):
        raise ModelFormatError(f"kappa file '{spec}' must hold a JSON array (or 'kappa_sq' field)")
    return WeightVector(np.asarray(data, dtype=np.float64))


# --------------------------------------------------------------------------


def cmd_gen(args) -> int:
    config = GeneratorConfig(
        dim=args.dim,
        pattern=args.pattern,
        seed=args.seed,
        gap=args.gap,
        range=args.range,
        embed_odd=args.embed_odd,
    )
    model = random_gzz(config)
    report = validate(model)
    if report.jordan_pairs:
        raise RuntimeError("generator produced a Jordan configuration; this is a bug")
    _write_output(model_to_json(model), args.out)
    return 0


def cmd_verify(args) -> int:
    model = _load(args.model)
    tolerances = None
    if args.tol is not None:
        from .verify import DEFAULT_TOLERANCES

        tolerances = {
            name: args.tol for name, default in DEFAULT_TOLERANCES.items() if 0.0 < default < 1.0
        }
    report = verify_model(model, name=args.model, seed=args.seed, tolerances=tolerances)
    _write_output(report.to_json(), args.out)
    return 0 if report.passed else CHECK_FAILED


def cmd_spectrum(args) -> int:
    model = _load(args.model)
    pairs = spectrum(model)
    payload = {
        "format": "spectrum/v1",
        "dim": len(pairs),
        "labels": [str(label) for label, _ in pairs],
        "values": [value for _, value in pairs],
    }
    _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def cmd_metric(args) -> int:
    model = _load(args.model)
    h, perm = _as_gzz(model)
    w = _parse_kappa(args.kappa, h.dim)
    theta = build_theta(h, w).theta
    if perm is not None:
        # report the metric in the file's own basis
        theta = permute_dense(theta, perm)
    ref = permute_dense(h.to_dense(), perm) if perm is not None else h.to_dense()
    tol = args.tol if args.tol is not None else 1e-12
    payload = {
        "format": "theta/v1",
        "dim": int(theta.shape[0]),
        "entries": [[float(x) for x in row] for row in theta],
        "residual": quasi_hermiticity_residual(ref, theta),
        "positive": bool(certify_positive(theta).positive),
        "bandwidth": bandwidth(theta, tol),
    }
    _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def cmd_evolve(args) -> int:
    model = _load(args.model)
    h, perm = _as_gzz(model)
    w = _parse_kappa(args.kappa, h.dim)
    if args.steps < 1:
        raise ModelFormatError("--steps must be >= 1")
    if not args.t1 > args.t0:
        raise ModelFormatError("--t1 must exceed --t0")
    times = np.linspace(args.t0, args.t1, args.steps + 1)
    rng = np.random.default_rng(args.seed)
    psi0 = random_state(h.dim, rng)
    if perm is not None:
        # the seeded state is defined in the file's basis; map it over
        psi0_block = psi0[perm]
    else:
        psi0_block = psi0
    traj = evolve(h, psi0_block, times, w)
    states = traj.states[:, perm] if perm is not None else traj.states
    header = ["t", "theta_norm", "l2_norm"]
    for k in range(h.dim):
        header += [f"re_psi_{k + 1}", f"im_psi_{k + 1}"]
    lines = [",".join(header)]
    for row, tval in enumerate(traj.times):
        cells = [_g17(tval), _g17(traj.theta_norms[row]), _g17(traj.l2_norms[row])]
        for amp in states[row]:
            cells += [_g17(amp.real), _g17(amp.imag)]
        lines.append(",".join(cells))
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_bench(args) -> int:
    dims = [int(part) for part in args.dims.split(",") if part]
    rows = run_benchmarks(dims, repetitions=args.reps, seed=args.seed)
    _write_output(rows_to_csv(rows), args.out)
    return 0


def cmd_convert(args) -> int:
    model = _load(args.model)
    if args.to == "gzz":
        if isinstance(model, GzzHamiltonian):
            converted = model
        else:
            converted, _ = zz_to_gzz(model)
    else:
        if isinstance(model, ZigZagHamiltonian):
            converted = model
        else:
            converted = gzz_to_zz(model)
    _write_output(model_to_json(converted), args.out)
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zzham",
        description="Closed-form zig-zag and block-coupled Hamiltonian toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random model file")
    p.add_argument("--dim", type=int, required=True, help="dense dimension (even, or odd with --embed-odd)")
    p.add_argument("--pattern", default="full", help="full | zigzag | banded:K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gap", type=float, default=0.1, help="minimum coupled diagonal separation")
    p.add_argument("--range", type=float, default=1.0, help="entry magnitude bound")
    p.add_argument("--embed-odd", action="store_true", help="pad odd dims by a zero row and column")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check every library invariant for a model file")
    p.add_argument("model")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="override the residual tolerances")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="eigenvalues with basis labels, as JSON")
    p.add_argument("model")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("metric", help="build the inner-product metric, as JSON")
    p.add_argument("model")
    p.add_argument("--kappa", default=None, help="weights: a JSON file or uniform:VALUE")
    p.add_argument("--tol", type=float, default=None, help="bandwidth threshold (relative)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("evolve", help="sample a trajectory, as CSV")
    p.add_argument("model")
    p.add_argument("--kappa", default=None, help="weights: a JSON file or uniform:VALUE")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=100, help="number of intervals (steps+1 samples)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random initial state")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("bench", help="time structured kernels against dense ones, as CSV")
    p.add_argument("--dims", default="64,128,256,512", help="comma-separated even dims")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("convert", help="translate between model file formats")
    p.add_argument("model")
    p.add_argument("--to", choices=("gzz", "zz"), required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_convert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NonDiagonalizableError, SingularMatrixError, PatternTooWideError) as exc:
        # legitimate failures on well-formed input
        print(f"zzham: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except (ModelFormatError, InvalidWeightError, ValueError) as exc:
        print(f"zzham: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
