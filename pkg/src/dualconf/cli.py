"""Command-line front end.

Every successful run prints exactly one machine-readable document on
stdout: a JSON envelope (schema_version "1") or, with --format csv, a CSV
table with a stable header row.  Diagnostics go to stderr.  Exit codes:
0 success, 1 identity residual above tolerance, 2 usage or domain error.

DUALCONF_QUAD_TOL (positive real) overrides the default quadrature
tolerance and is echoed in the envelope inputs when set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import quad
from .dists import LocScaleParams
from .duality import (
    Family,
    IntervalKind,
    Observation,
    confidence_density,
    dual_of,
    identity_terms,
    interval_probability,
    solve_interval,
)
from .errors import ConvergenceError, DomainError, OrderingError, RegistryError
from .montecarlo import ExperimentSpec, run_coverage
from . import _kernels

SCHEMA_VERSION = "1"

_KINDS = {
    "central": IntervalKind.CENTRAL,
    "shortest": IntervalKind.SHORTEST,
    "upper": IntervalKind.UPPER_LIMIT,
    "lower": IntervalKind.LOWER_LIMIT,
}

_FAMILIES = {
    "laplace": Family.LAPLACE,
    "normal": Family.NORMAL,
    "cauchy": Family.CAUCHY,
    "poisson": Family.POISSON,
}


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _positive_float(text: str) -> float:
    value = _finite_float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text!r}")
    return value


def _unit_open_float(text: str) -> float:
    value = _finite_float(text)
    if not (0.0 < value < 1.0):
        raise argparse.ArgumentTypeError(f"must be in the open interval (0, 1), got {text!r}")
    return value


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    value = _count(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text!r}")
    return value


def _seed(text: str) -> int:
    value = _count(text)
    if value >= 2**64:
        raise argparse.ArgumentTypeError("must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualconf",
        description="Confidence-density intervals from a single observation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_scale=True):
        p.add_argument("--dist", required=True, choices=sorted(_FAMILIES))
        p.add_argument("--obs", type=_finite_float, help="observed value (continuous families)")
        p.add_argument("--count", type=_count, help="observed count (poisson)")
        if with_scale:
            p.add_argument("--scale", type=_positive_float, help="known scale (continuous families)")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p_int = sub.add_parser("interval", help="solve a confidence/fiducial interval")
    add_common(p_int)
    p_int.add_argument("--level", type=_unit_open_float, required=True)
    p_int.add_argument("--kind", required=True, choices=sorted(_KINDS))

    p_den = sub.add_parser("density", help="tabulate the confidence density")
    add_common(p_den)
    p_den.add_argument("--from", dest="lo", type=_finite_float, required=True)
    p_den.add_argument("--to", dest="hi", type=_finite_float, required=True)
    p_den.add_argument("--points", type=_positive_int, required=True)

    p_id = sub.add_parser("identity", help="check the three-term unit identity")
    add_common(p_id)
    p_id.add_argument("--a1", type=_finite_float, required=True)
    p_id.add_argument("--a2", type=_finite_float, required=True)
    p_id.add_argument("--method", choices=["closed", "quad"], default="closed")
    p_id.add_argument("--tol", type=_positive_float, help="pass threshold for the residual")

    p_cov = sub.add_parser("coverage", help="Monte Carlo coverage experiment")
    p_cov.add_argument("--dist", required=True, choices=sorted(_FAMILIES))
    p_cov.add_argument("--a", type=_finite_float, help="true location (continuous families)")
    p_cov.add_argument("--lambda", dest="lam", type=_positive_float, help="true mean (poisson)")
    p_cov.add_argument("--scale", type=_positive_float)
    p_cov.add_argument("--level", type=_unit_open_float, required=True)
    p_cov.add_argument("--kind", required=True, choices=sorted(_KINDS))
    p_cov.add_argument("--trials", type=_positive_int, required=True)
    p_cov.add_argument("--seed", type=_seed, default=0)
    p_cov.add_argument("--workers", type=_positive_int, default=1)
    p_cov.add_argument("--format", choices=["json", "csv"], default="json")

    p_sam = sub.add_parser("sample", help="deterministic inverse-transform samples")
    p_sam.add_argument("--dist", required=True, choices=["cauchy", "laplace", "normal"])
    p_sam.add_argument("--a", type=_finite_float, required=True, help="location")
    p_sam.add_argument("--scale", type=_positive_float, required=True)
    p_sam.add_argument("--n", type=_positive_int, required=True)
    p_sam.add_argument("--seed", type=_seed, default=0)
    p_sam.add_argument("--format", choices=["json", "csv"], default="json")

    return parser


def _jsonable(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(command: str, inputs: dict, result: dict, fmt: str, csv_rows, warnings):
    if fmt == "csv":
        header, rows = csv_rows
        lines = [",".join(header)]
        lines.extend(",".join(_cell(v) for v in row) for row in rows)
        print("\n".join(lines))
        return
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _jsonable(inputs),
        "result": _jsonable(result),
        "warnings": list(warnings),
    }
    print(json.dumps(envelope, allow_nan=False))


def _dual_from_args(args) -> tuple:
    """Build the ConfidenceDensity named by --dist/--obs/--count/--scale."""
    family = _FAMILIES[args.dist]
    if family is Family.POISSON:
        if args.count is None:
            raise DomainError("--count is required for --dist poisson")
        if args.obs is not None:
            raise DomainError("--obs is not valid for --dist poisson (use --count)")
        if getattr(args, "scale", None) is not None:
            raise DomainError("--scale is not valid for --dist poisson")
        cd = dual_of(family, args.count)
        inputs = {"dist": args.dist, "count": args.count}
    else:
        if args.obs is None:
            raise DomainError(f"--obs is required for --dist {args.dist}")
        if args.count is not None:
            raise DomainError(f"--count is not valid for --dist {args.dist} (use --obs)")
        if args.scale is None:
            raise DomainError(f"--scale is required for --dist {args.dist}")
        cd = dual_of(family, Observation(args.obs), args.scale)
        inputs = {"dist": args.dist, "obs": args.obs, "scale": args.scale}
    return cd, inputs


def _quad_tol_env(inputs: dict, warnings: list) -> float:
    raw = os.environ.get("DUALCONF_QUAD_TOL")
    if raw is None:
        return quad.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise DomainError(f"DUALCONF_QUAD_TOL must be a positive real, got {raw!r}")
    if not (tol > 0.0 and math.isfinite(tol)):
        raise DomainError(f"DUALCONF_QUAD_TOL must be a positive real, got {raw!r}")
    inputs["quad_tol"] = tol
    warnings.append("quadrature tolerance overridden by DUALCONF_QUAD_TOL")
    return tol


def cmd_interval(args) -> int:
    cd, inputs = _dual_from_args(args)
    inputs.update({"level": args.level, "kind": args.kind, "format": args.format})
    warnings: list[str] = []
    _quad_tol_env(inputs, warnings)  # echoed when set; interval itself is closed-form
    interval = solve_interval(cd, args.level, _KINDS[args.kind])
    achieved = interval_probability(cd, interval.lower, interval.upper)
    result = {
        "lower": interval.lower,
        "upper": interval.upper,
        "level": interval.level,
        "kind": interval.kind.value,
        "probability": achieved,
    }
    header = ["lower", "upper", "level", "kind", "probability"]
    row = [interval.lower, interval.upper, interval.level, interval.kind.value, achieved]
    _emit("interval", inputs, result, args.format, (header, [row]), warnings)
    return 0


def cmd_density(args) -> int:
    cd, inputs = _dual_from_args(args)
    inputs.update(
        {"from": args.lo, "to": args.hi, "points": args.points, "format": args.format}
    )
    warnings: list[str] = []
    _quad_tol_env(inputs, warnings)
    if args.lo >= args.hi:
        raise DomainError("--from must be strictly less than --to")
    if args.points < 2:
        raise DomainError("--points must be >= 2")
    if _FAMILIES[args.dist] is Family.POISSON and args.lo < 0.0:
        raise DomainError("--from must be >= 0 for --dist poisson (rate support)")
    step_count = args.points - 1
    rows = []
    for i in range(args.points):
        theta = args.lo + (args.hi - args.lo) * (i / step_count)
        rows.append((theta, confidence_density(cd, theta)))
    result = {"points": [{"theta": t, "density": d} for t, d in rows]}
    _emit("density", inputs, result, args.format, (["theta", "density"], rows), warnings)
    return 0


def cmd_identity(args) -> int:
    cd, inputs = _dual_from_args(args)
    method = "closed_form" if args.method == "closed" else "quadrature"
    tol = args.tol if args.tol is not None else (1e-12 if args.method == "closed" else 1e-8)
    inputs.update(
        {"a1": args.a1, "a2": args.a2, "method": args.method, "tol": tol, "format": args.format}
    )
    warnings: list[str] = []
    quad_tol = _quad_tol_env(inputs, warnings)
    check = identity_terms(cd, args.a1, args.a2, method, quad_tol)
    passed = check.residual <= tol
    result = {
        "t1": check.t1,
        "t2": check.t2,
        "t3": check.t3,
        "sum": check.total,
        "residual": check.residual,
        "pass": passed,
    }
    header = ["t1", "t2", "t3", "sum", "residual", "pass"]
    row = [check.t1, check.t2, check.t3, check.total, check.residual, passed]
    _emit("identity", inputs, result, args.format, (header, [row]), warnings)
    return 0 if passed else 1


def cmd_coverage(args) -> int:
    family = _FAMILIES[args.dist]
    if family is Family.POISSON:
        if args.lam is None:
            raise DomainError("--lambda is required for --dist poisson")
        if args.a is not None or args.scale is not None:
            raise DomainError("--a/--scale are not valid for --dist poisson")
        true_params = args.lam
        inputs = {"dist": args.dist, "lambda": args.lam}
    else:
        if args.a is None or args.scale is None:
            raise DomainError(f"--a and --scale are required for --dist {args.dist}")
        if args.lam is not None:
            raise DomainError(f"--lambda is not valid for --dist {args.dist}")
        true_params = LocScaleParams(args.a, args.scale)
        inputs = {"dist": args.dist, "a": args.a, "scale": args.scale}
    inputs.update(
        {
            "level": args.level,
            "kind": args.kind,
            "trials": args.trials,
            "seed": args.seed,
            "workers": args.workers,
            "format": args.format,
        }
    )
    warnings: list[str] = []
    _quad_tol_env(inputs, warnings)
    spec = ExperimentSpec(
        family=family,
        true_params=true_params,
        level=args.level,
        kind=_KINDS[args.kind],
        trials=args.trials,
        seed=args.seed,
        workers=args.workers,
    )
    report = run_coverage(spec)
    result = {
        "trials": report.trials,
        "hits": report.hits,
        "coverage": report.coverage,
        "binom_se": report.binom_se,
        "mean_width": report.mean_width,
        "seed": report.seed,
    }
    header = ["trials", "hits", "coverage", "binom_se", "mean_width", "seed"]
    row = [report.trials, report.hits, report.coverage, report.binom_se,
           report.mean_width, report.seed]
    _emit("coverage", inputs, result, args.format, (header, [row]), warnings)
    return 0


def cmd_sample(args) -> int:
    inputs = {
        "dist": args.dist,
        "a": args.a,
        "scale": args.scale,
        "n": args.n,
        "seed": args.seed,
        "format": args.format,
    }
    warnings: list[str] = []
    _quad_tol_env(inputs, warnings)
    code = {
        "laplace": _kernels.FAMILY_LAPLACE,
        "normal": _kernels.FAMILY_NORMAL,
        "cauchy": _kernels.FAMILY_CAUCHY,
    }[args.dist]
    samples = _kernels.location_samples(code, args.a, args.scale, args.seed, 0, args.n)
    result = {"samples": list(samples)}
    rows = [(x,) for x in samples]
    _emit("sample", inputs, result, args.format, (["sample"], rows), warnings)
    return 0


_COMMANDS = {
    "interval": cmd_interval,
    "density": cmd_density,
    "identity": cmd_identity,
    "coverage": cmd_coverage,
    "sample": cmd_sample,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (DomainError, OrderingError, RegistryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
