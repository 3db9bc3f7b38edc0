"""Command-line front end.

Subcommands:

    bounds <file>                    full bound report for one instance (JSON)
    sweep --points N --out F         qubit phase sweep to CSV
    random --count --dims --seed --tol   randomized invariant suite (JSON)
    montecarlo --file --samples --seed   statistical bound check (JSON)

Exit codes: 0 success, 1 I/O error, 2 validation or usage error, 3 invariant
(or 5-sigma) violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .bounds import OrthogonalityError, bound_report
from .instances import InstanceFormatError, json_dumps, load_instance, report_to_dict
from .montecarlo import statistical_bound_check
from .quantum import (
    DimensionMismatchError,
    HermiticityError,
    NormalizationError,
    equatorial_state,
    pauli_x,
    pauli_z,
)
from .verify import DEFAULT_SUITE_DIMS, DEFAULT_SUITE_TOL, run_invariant_suite

__all__ = [
    "SweepRow",
    "qubit_sweep",
    "write_sweep_csv",
    "main",
    "entrypoint",
    "EXIT_OK",
    "EXIT_IO",
    "EXIT_VALIDATION",
    "EXIT_VIOLATION",
    "DEFAULT_SWEEP_POINTS",
    "DEFAULT_MONTECARLO_SEED",
]

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_VIOLATION = 3

# fine enough to render the bound curves smoothly, and includes alpha = 0
DEFAULT_SWEEP_POINTS = 241

DEFAULT_MONTECARLO_SEED = 42

TAU = 6.283185307179586476925287


@dataclass(frozen=True)
class SweepRow:
    """Bound values for X/Z on the equatorial qubit state at one phase."""

    alpha: float
    var_a: float
    var_b: float
    sum_var: float
    prod_var: float
    t1: float
    t2: float
    l1: float
    l2: float


SWEEP_FIELDS = ("alpha", "var_a", "var_b", "sum_var", "prod_var", "t1", "t2", "l1", "l2")


def qubit_sweep(points: int) -> list[SweepRow]:
    """Rows at alpha_k = 2 pi k / points for A = X, B = Z on the equatorial state."""
    if points < 2:
        raise ValueError("points must be at least 2")
    a, b = pauli_x(), pauli_z()
    rows = []
    for k in range(points):
        alpha = TAU * k / points
        rep = bound_report(a, b, equatorial_state(alpha))
        rows.append(
            SweepRow(
                alpha=alpha,
                var_a=rep.var_a,
                var_b=rep.var_b,
                sum_var=rep.sum_var,
                prod_var=rep.prod_var,
                t1=rep.t1,
                t2=rep.t2,
                l1=rep.l1,
                l2=rep.l2,
            )
        )
    return rows


def _fmt(x: float) -> str:
    # shortest representation capped at 12 significant digits
    return f"{x:.12g}"


def write_sweep_csv(rows: list[SweepRow], fh) -> None:
    fh.write(",".join(SWEEP_FIELDS) + "\n")
    for row in rows:
        fh.write(",".join(_fmt(getattr(row, name)) for name in SWEEP_FIELDS) + "\n")


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_instance_checked(path: str):
    """Returns (instance, None) or (None, exit_code) with the diagnostic printed."""
    try:
        instance = load_instance(path)
    except OSError as exc:
        return None, _fail(f"cannot read {path}: {exc}", EXIT_IO)
    except json.JSONDecodeError as exc:
        return None, _fail(f"malformed JSON in {path}: {exc}", EXIT_VALIDATION)
    except (InstanceFormatError, NormalizationError, HermiticityError) as exc:
        return None, _fail(f"invalid instance {path}: {exc}", EXIT_VALIDATION)
    return instance, None


def cmd_bounds(args) -> int:
    instance, code = _load_instance_checked(args.file)
    if instance is None:
        return code
    try:
        report = bound_report(instance.a, instance.b, instance.state, user_xi_perp=instance.xi_perp)
    except (OrthogonalityError, DimensionMismatchError, ValueError) as exc:
        return _fail(f"invalid instance {args.file}: {exc}", EXIT_VALIDATION)
    print(json_dumps(report_to_dict(report)))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.points < 2:
        return _fail("--points must be at least 2", EXIT_VALIDATION)
    rows = qubit_sweep(args.points)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(rows, fh)
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}", EXIT_IO)
    return EXIT_OK


def cmd_random(args) -> int:
    try:
        dims = tuple(int(part) for part in args.dims.split(","))
    except ValueError:
        return _fail(f"--dims must be a comma-separated integer list, got {args.dims!r}", EXIT_VALIDATION)
    try:
        report = run_invariant_suite(
            count=args.count, dims=dims, seed=args.seed, tol=args.tol, perp_samples=args.perp_samples
        )
    except ValueError as exc:
        return _fail(str(exc), EXIT_VALIDATION)
    print(json_dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_montecarlo(args) -> int:
    instance, code = _load_instance_checked(args.file)
    if instance is None:
        return code
    if args.samples < 2:
        return _fail("--samples must be at least 2 (variance needs n >= 2)", EXIT_VALIDATION)
    try:
        report = statistical_bound_check(instance.a, instance.b, instance.state, n=args.samples, seed=args.seed)
    except (DimensionMismatchError, ValueError) as exc:
        return _fail(str(exc), EXIT_VALIDATION)
    print(json_dumps(report.to_dict()))
    return EXIT_OK if not report.violation else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purbounds",
        description="Preparation-uncertainty bounds: Heisenberg-Robertson-Schrodinger and Maccone-Pati.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="compute all bounds for a JSON instance file")
    p_bounds.add_argument("file", help="instance file path")
    p_bounds.set_defaults(func=cmd_bounds)

    p_sweep = sub.add_parser("sweep", help="qubit phase sweep for X/Z, written as CSV")
    p_sweep.add_argument("--points", type=int, default=DEFAULT_SWEEP_POINTS, help="grid points over [0, 2pi)")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_random = sub.add_parser("random", help="run the randomized invariant suite")
    p_random.add_argument("--count", type=int, default=1000, help="number of random instances")
    p_random.add_argument("--dims", default=",".join(str(d) for d in DEFAULT_SUITE_DIMS), help="comma-separated dimensions to cycle")
    p_random.add_argument("--seed", type=int, default=42, help="master seed")
    p_random.add_argument("--tol", type=float, default=DEFAULT_SUITE_TOL, help="violation tolerance")
    p_random.add_argument("--perp-samples", type=int, default=100, dest="perp_samples", help="random xi_perp samples per instance")
    p_random.set_defaults(func=cmd_random)

    p_mc = sub.add_parser("montecarlo", help="statistical bound check from sampled outcomes")
    p_mc.add_argument("--file", required=True, help="instance file path")
    p_mc.add_argument("--samples", type=int, default=100_000, help="measurement samples per observable")
    p_mc.add_argument("--seed", type=int, default=DEFAULT_MONTECARLO_SEED, help="sampling seed")
    p_mc.set_defaults(func=cmd_montecarlo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())
