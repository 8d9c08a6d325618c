"""Command-line interface: ``lie-airy {eval1d,check,evalmat,verify}``.

Exit codes: 0 success, 1 a verification suite failed, 2 usage or parse error,
3 numerical failure.  Floats are written with 17 significant digits; JSON
output never contains NaN or infinities.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from ._parallel import ordered_map
from .checker import classify
from .errors import LieAiryError
from .oscillatory import Measure, QuadConfig, airy_1d
from .poly import parse_poly
from .spectral import MatrixAiryConfig, hermitian_eigenvalues, matrix_airy_details
from .suites import SUITES, run_suite

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class NonFiniteOutput(ValueError):
    pass


def fmt_float(v: float) -> str:
    if not math.isfinite(v):
        raise NonFiniteOutput(f"non-finite value {v} in output")
    return format(v, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with 17-significant-digit floats; rejects NaN and infinities."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag], indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.number, bool)) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _measure(text: str) -> Measure:
    key = text.lower().replace("-", "").replace("_", "")
    if key == "lebesgue":
        return Measure.LEBESGUE
    if key == "selfdual":
        return Measure.SELF_DUAL
    raise argparse.ArgumentTypeError(f"unknown measure {text!r} (lebesgue or selfdual)")


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lie-airy",
        description="Airy-type oscillatory integrals, growth checks and matrix Airy evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON file with default values for the flags (flags win)")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
    common.add_argument("--workers", type=_positive_int, default=None,
                        help="worker threads (default: LIE_AIRY_THREADS or CPU count)")

    p = sub.add_parser("eval1d", parents=[common], help="tabulate d^r A_p on a grid of x")
    p.add_argument("--poly", required=True, help="phase polynomial in y1, e.g. 'y1^3/3'")
    p.add_argument("--xmin", type=float, default=0.0)
    p.add_argument("--xmax", type=float, default=0.0)
    p.add_argument("--points", type=_positive_int, default=1)
    p.add_argument("--order", type=int, default=0, help="derivative order r (default 0)")
    p.add_argument("--measure", type=_measure, default=Measure.LEBESGUE,
                   help="lebesgue (default) or selfdual")
    p.add_argument("--tol", type=_positive_float, default=1e-10, help="absolute tolerance (1e-10)")
    p.add_argument("--max-panels", type=_positive_int, default=200_000)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("check", parents=[common], help="classify a phase polynomial")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("evalmat", parents=[common], help="matrix Airy integral c tr(X^m)")
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--coeff", type=Fraction, default=None,
                   help="coefficient c (default 1/3 for m=3, else 1)")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--eigs", type=_float_list, default=None, help="comma-separated eigenvalues")
    src.add_argument("--matrix", default=None,
                     help="JSON file: n rows of n [re, im] pairs of a hermitian matrix")
    p.add_argument("--measure", type=_measure, default=Measure.LEBESGUE)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.add_argument("--coincidence-tol", type=_positive_float, default=1e-8)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--samples", type=_positive_int, default=None)
    p.add_argument("--seed", type=int, default=None)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    if not isinstance(cfg, dict):
        parser.error("config file must hold a JSON object")
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    subparser = subparsers.choices[args.command]
    known = {a.dest for a in subparser._actions}
    defaults = {}
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest not in known:
            parser.error(f"unknown config key {key!r} for {args.command}")
        action = next(a for a in subparser._actions if a.dest == dest)
        if action.type is not None and isinstance(value, str):
            value = action.type(value)
        elif action.type in (_measure, Fraction) and value is not None:
            value = action.type(str(value))
        defaults[dest] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_eval1d(args) -> tuple[str, int]:
    p = parse_poly(args.poly)
    if p.nvars != 1:
        raise argparse.ArgumentTypeError("eval1d needs a polynomial in one variable")
    cfg = QuadConfig(args.tol, args.max_panels, None, args.measure)
    xs = np.linspace(args.xmin, args.xmax, args.points)
    results = ordered_map(lambda x: airy_1d(p, float(x), args.order, cfg), xs, args.workers)

    def cycle_t(res):
        if res.cycle is None:
            return None
        return res.cycle.t if res.cycle.kind == "odd" else res.cycle.theta[0]

    if args.format == "json":
        rows = [{"x": float(x), "re": r.value.real, "im": r.value.imag,
                 "err_estimate": r.err_estimate, "cycle_t": cycle_t(r)} for x, r in zip(xs, results)]
        doc = {"schema": SCHEMA, "poly": args.poly, "order": args.order,
               "measure": args.measure.value, "rows": rows}
        return dumps(doc) + "\n", EXIT_OK
    lines = ["schema,x,re,im,err_estimate,cycle_t"]
    for x, r in zip(xs, results):
        t = cycle_t(r)
        lines.append(",".join([SCHEMA, fmt_float(float(x)), fmt_float(r.value.real),
                               fmt_float(r.value.imag), fmt_float(r.err_estimate),
                               "" if t is None else fmt_float(t)]))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_check(args) -> tuple[str, int]:
    p = parse_poly(args.poly)
    rep = classify(p)
    doc = {"schema": SCHEMA, "poly": args.poly, **rep.to_dict()}
    return dumps(doc) + "\n", EXIT_OK


def _read_matrix(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        rows = json.load(fh)
    try:
        M = np.array([[complex(e[0], e[1]) for e in row] for row in rows])
    except (TypeError, IndexError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"malformed matrix file: {exc}") from None
    return M


def cmd_evalmat(args) -> tuple[str, int]:
    if args.matrix is not None:
        eigs = hermitian_eigenvalues(_read_matrix(args.matrix))
    elif args.eigs is not None:
        eigs = np.array(args.eigs)
    else:
        raise argparse.ArgumentTypeError("give --eigs or --matrix")
    n = args.n if args.n is not None else len(eigs)
    if n != len(eigs):
        raise argparse.ArgumentTypeError(f"--n {n} but {len(eigs)} eigenvalues given")
    cfg = MatrixAiryConfig(n, args.m, args.coeff, args.measure, args.coincidence_tol,
                           QuadConfig(args.tol), args.workers)
    res = matrix_airy_details(cfg, eigs)
    doc = {"schema": SCHEMA, "n": n, "m": args.m, "coeff": str(cfg.c), **res.to_dict()}
    return dumps(doc) + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    opts = {"n": args.n, "samples": args.samples, "seed": args.seed, "workers": args.workers}
    reports = [run_suite(name, **opts) for name in names]
    ok = all(r["passed"] for r in reports)
    doc = reports[0] if len(reports) == 1 else {"schema": SCHEMA, "passed": ok, "reports": reports}
    return dumps(doc) + "\n", EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"eval1d": cmd_eval1d, "check": cmd_check, "evalmat": cmd_evalmat, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, sys.argv[1:] if argv is None else list(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        text, code = COMMANDS[args.command](args)
    except (argparse.ArgumentTypeError, ValueError, OSError, json.JSONDecodeError) as exc:
        # parse errors, non-hermitian input, bad sizes
        if isinstance(exc, NonFiniteOutput):
            print(f"lie-airy: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"lie-airy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LieAiryError, RuntimeError, ArithmeticError) as exc:
        print(f"lie-airy: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _write(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
