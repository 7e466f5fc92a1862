"""Command-line front end.

Exit codes: 0 success (discrepancies are data), 1 parse/validation error,
2 numeric failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from functools import reduce
from pathlib import Path

import numpy as np

from .classify import DEFAULT_N_MAX, DEFAULT_TOL, ClassifyConfig, classify
from .freegroup import FreeGroupContext, freegroup_classify, parse_free_operator
from .graph import GraphopError, parse_graph, shadow
from .operators import EPS_EQ, EPS_ZERO, format_operator, op_adjoint, op_multiply, parse_operator, self_commutator
from .report import dumps, free_report_to_dict, render_text, report_to_dict
from .representation import (
    LINEAR_KINDS,
    NumericError,
    linear_graph_compression,
    operator_matrix,
    spectral_trace,
)
from .words import enumerate_ball

MODE_SETS = {
    "both": ("paper", "oracle", "numeric"),
    "paper": ("paper",),
    "oracle": ("oracle", "numeric"),
}


class UsageError(GraphopError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_tol() -> float:
    raw = os.environ.get("GRAPHOP_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"GRAPHOP_TOL must be a number, got {raw!r}") from None
    if not tol > 0:
        raise UsageError(f"GRAPHOP_TOL must be positive, got {raw!r}")
    return tol


def _positive(name):
    def conv(text):
        v = float(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v
    return conv


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args):
    g = shadow(parse_graph(_read(args.graph)))
    ops = []
    for p in args.operator:
        try:
            ops.append(parse_operator(g, _read(p), eps_zero=args.eps_zero))
        except GraphopError as exc:
            raise GraphopError(f"{p}: {exc}") from None
    return g, ops


def _one(args, ops):
    if len(ops) != 1:
        raise UsageError(f"{args.command} takes exactly one operator file")
    return ops[0]


def cmd_classify(args) -> str:
    _, ops = _load(args)
    t = _one(args, ops)
    cfg = ClassifyConfig(MODE_SETS[args.mode], args.truncation, args.tol, args.eps_eq)
    doc = report_to_dict(classify(t, cfg))
    return dumps(doc) if args.json else render_text(doc)


def cmd_product(args) -> str:
    _, ops = _load(args)
    if len(ops) < 2:
        raise UsageError("product needs at least two operator files")
    return format_operator(reduce(op_multiply, ops))


def cmd_adjoint(args) -> str:
    _, ops = _load(args)
    return format_operator(op_adjoint(_one(args, ops)))


def cmd_commutator(args) -> str:
    _, ops = _load(args)
    return format_operator(self_commutator(_one(args, ops)))


def cmd_matrix(args) -> str:
    g, ops = _load(args)
    return operator_matrix(_one(args, ops), enumerate_ball(g, args.ball)).to_csv()


def cmd_spectrum(args) -> str:
    _, ops = _load(args)
    return spectral_trace(_one(args, ops), args.ball_max).to_csv()


def cmd_linear_compress(args) -> str:
    return linear_graph_compression(args.kind, args.j, args.size).to_csv()


def cmd_free_classify(args) -> str:
    ctx = FreeGroupContext.create(args.N)
    t = parse_free_operator(_read(args.operator), ctx, eps_zero=args.eps_zero)
    report = freegroup_classify(t, ctx, args.truncation, args.tol, args.eps_eq)
    doc = free_report_to_dict(report)
    return dumps(doc) if args.json else render_text(doc)


def _add_tolerances(p):
    p.add_argument("--eps-zero", type=_positive("--eps-zero"), default=EPS_ZERO,
                   help="coefficients at or below this magnitude are pruned")
    p.add_argument("--eps-eq", type=_positive("--eps-eq"), default=EPS_EQ,
                   help="equality tolerance for symbolic comparisons")


def _add_operator_args(p):
    p.add_argument("-g", "--graph", required=True, help=".gg graph file")
    p.add_argument("-o", "--operator", required=True, action="append", help=".gop operator file")
    _add_tolerances(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphop", description="Graph groupoid operators: algebra, classification, matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify an operator in paper/oracle/numeric modes")
    _add_operator_args(p)
    p.add_argument("--mode", choices=sorted(MODE_SETS), default="both")
    p.add_argument("--truncation", type=_nonneg_int, default=DEFAULT_N_MAX, help="largest ball radius probed")
    p.add_argument("--tol", type=_positive("--tol"), default=_default_tol())
    p.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    p.set_defaults(func=cmd_classify)

    for name, func, text in (("product", cmd_product, "product of operators, left to right"),
                             ("adjoint", cmd_adjoint, "adjoint operator"),
                             ("commutator", cmd_commutator, "self-commutator T*T - TT*")):
        p = sub.add_parser(name, help=text)
        _add_operator_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("matrix", help="CSV matrix of an operator on a ball basis")
    _add_operator_args(p)
    p.add_argument("--ball", type=_nonneg_int, required=True)
    p.add_argument("--csv", action="store_true", help="accepted for symmetry; CSV is the only format")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("spectrum", help="lambda_min of self-commutator truncations as CSV")
    _add_operator_args(p)
    p.add_argument("--ball-max", type=_nonneg_int, required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("linear-compress", help="vertex-space matrices of the infinite linear graph")
    p.add_argument("--kind", choices=LINEAR_KINDS, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_linear_compress)

    free = sub.add_parser("free", help="finitely supported elements of L(F_N)")
    free_sub = free.add_subparsers(dest="free_command", required=True, parser_class=_Parser)
    p = free_sub.add_parser("classify")
    p.add_argument("-N", type=int, required=True, help="number of free generators")
    p.add_argument("-o", "--operator", required=True, help=".fop operator file")
    p.add_argument("--truncation", type=_nonneg_int, default=DEFAULT_N_MAX)
    p.add_argument("--tol", type=_positive("--tol"), default=_default_tol())
    p.add_argument("--json", action="store_true")
    _add_tolerances(p)
    p.set_defaults(func=cmd_free_classify, command="free classify")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except (NumericError, np.linalg.LinAlgError) as exc:
        print(f"graphop: numeric failure: {exc}", file=sys.stderr)
        return 2
    except GraphopError as exc:
        print(f"graphop: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
