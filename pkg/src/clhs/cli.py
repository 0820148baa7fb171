"""Command-line interface: ``clhs generate|diagnose|check|curves``."""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import oracle
from .constraints import (
    RetryExhaustedError,
    criterion_slack,
    existence_criterion,
    max_retries_default,
    clhs,
    scores,
)
from .csrs import csrs
from .design import SpecError
from .diagnostics import report
from .io import curve_table, load_design_spec, read_samples, write_curves, write_samples
from .sampling import lhs, srs, verify_lhs

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RETRIES = 2
EXIT_IO = 3

METHODS = {"srs": srs, "lhs": lhs, "csrs": csrs, "clhs": clhs}


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _emit(data: bytes, out):
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _read_samples(path):
    with open(path, "rb") as fh:
        return read_samples(fh.read())


def cmd_generate(args):
    spec = load_design_spec(args.spec)
    func = METHODS[args.method]
    if args.method == "clhs":
        retries = args.max_retries if args.max_retries is not None else max_retries_default()
        m = func(spec, args.n, args.seed, retries)
    else:
        m = func(spec, args.n, args.seed)
    _emit(write_samples(m, args.format), args.out)
    return EXIT_OK


def _load_pair(args):
    spec = load_design_spec(args.spec)
    m = _read_samples(args.samples)
    if list(m.variable_names) != spec.names:
        raise SpecError(f"sample columns {list(m.variable_names)} do not match spec "
                        f"variables {spec.names}")
    return spec, m


def cmd_diagnose(args):
    spec, m = _load_pair(args)
    _emit((json.dumps(report(m, spec).to_dict(), indent=2) + "\n").encode(), args.out)
    return EXIT_OK


def cmd_check(args):
    spec, m = _load_pair(args)
    ok = True
    result = {"stratified": verify_lhs(m, spec), "links": []}
    if not args.allow_unstratified and not all(result["stratified"]):
        ok = False
    for link in spec.links:
        left, right = m.values[:, link.left], m.values[:, link.right]
        held = bool(np.all(link.relation.holds(left, right)))
        ok &= held
        entry = {"left": spec.names[link.left], "right": spec.names[link.right],
                 "relation": link.relation.value, "satisfied": held,
                 "criterion_slack": criterion_slack(scores(left, right, link.relation))}
        if args.oracle:
            if m.n > oracle.MAX_ORACLE_N:
                raise SpecError(f"--oracle supports n <= {oracle.MAX_ORACLE_N}, got {m.n}")
            brute = oracle.brute_force_exists(left, right, link.relation)
            entry["oracle_exists"] = brute
            entry["oracle_agrees"] = brute == existence_criterion(scores(left, right, link.relation))
            ok &= entry["oracle_agrees"]
        result["links"].append(entry)
    result["ok"] = bool(ok)
    print(json.dumps(result, indent=2))
    return EXIT_OK if ok else EXIT_INVALID


def cmd_curves(args):
    spec, m = _load_pair(args)
    levels = args.levels or spec.metadata.get("levels") or list(range(1, spec.p + 1))
    _emit(write_curves(curve_table(m, levels, args.query)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clhs", description="Latin hypercube designs under chained inequality constraints")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="draw a design")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--method", choices=sorted(METHODS), default="clhs")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--max-retries", type=int, default=None,
                   help="redraw cap per column (default: $CLHS_MAX_RETRIES or 10000)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("diagnose", help="JSON quality report for a design")
    p.add_argument("--spec", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("check", help="exit 0 if constraints and stratification hold")
    p.add_argument("--spec", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--allow-unstratified", action="store_true",
                   help="only check the inequality links")
    p.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("curves", help="per-experiment curves over levels, as CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--levels", type=_floats, default=None)
    p.add_argument("--query", type=_floats, default=None,
                   help="resample curves at these points by linear interpolation")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_curves)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RetryExhaustedError as exc:
        print(f"clhs: error: {exc}", file=sys.stderr)
        return EXIT_RETRIES
    except OSError as exc:
        print(f"clhs: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SpecError, ValueError) as exc:
        print(f"clhs: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
