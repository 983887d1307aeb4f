"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 I/O or shape
error, 4 precondition violation.  Every report is a single JSON document on
standard output; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .errors import (EmptyDomain, InnerNotConcave, MonorelError, NotMaximal, NotMonotone,
                     NotSymmetric)
from .fileformat import ParseError, ShapeError, dump_relation, encode_value, load_relation
from .fitzpatrick import INF_ORDER, fitz_inf, fitz_n, fitz_n_closed_symmetric
from .oracle import KINDS, brute_fitz_n, random_relation
from .relation import is_monotone, is_symmetric, maximality_report, parts
from .subspace import Tolerances
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_IO, EXIT_PRECONDITION = range(5)

TOLERANCE_ENV = "MONOREL_TOLERANCE_EQ"

_REASONS = {NotMonotone: "not_monotone", NotSymmetric: "not_symmetric",
            NotMaximal: "not_maximal"}


class CLIError(Exception):
    def __init__(self, code, message, reason=None):
        super().__init__(message)
        self.code = code
        self.reason = reason


def tolerances_from_env(environ=None) -> Tolerances:
    environ = os.environ if environ is None else environ
    raw = environ.get(TOLERANCE_ENV)
    if raw is None:
        return Tolerances()
    try:
        return Tolerances(tau_eq=float(raw))
    except ValueError as exc:
        raise CLIError(EXIT_PARSE, f"{TOLERANCE_ENV}: {exc}") from exc


def _emit(doc):
    sys.stdout.write(json.dumps(doc) + "\n")


def _load(path):
    try:
        return load_relation(path)
    except ParseError as exc:
        raise CLIError(EXIT_PARSE, f"{path}: {exc}") from exc
    except ShapeError as exc:
        raise CLIError(EXIT_IO, f"{path}: {exc}") from exc
    except OSError as exc:
        raise CLIError(EXIT_IO, f"{path}: {exc.strerror or exc}") from exc


def parse_point(text: str, d: int) -> np.ndarray:
    """Parse ``"x1,...,xd;y1,...,yd"``."""
    halves = text.split(";")
    if len(halves) != 2:
        raise CLIError(EXIT_PARSE, "point must look like 'x1,...,xd;y1,...,yd'")
    try:
        x, xs = ([float(v) for v in h.split(",")] for h in halves)
    except ValueError as exc:
        raise CLIError(EXIT_PARSE, f"bad coordinate in point: {exc}") from exc
    if len(x) != d or len(xs) != d:
        raise CLIError(EXIT_PRECONDITION, f"point must have {d} + {d} coordinates",
                       "point_dimension")
    return np.array(x + xs)


def parse_order(text: str):
    if text.lower() in ("inf", "infinity"):
        return INF_ORDER
    try:
        n = int(text)
    except ValueError as exc:
        raise CLIError(EXIT_PARSE, f"order must be an integer >= 2 or 'inf': {text!r}") from exc
    if n < 2:
        raise CLIError(EXIT_PRECONDITION, "order must be >= 2", "order")
    return n


def cmd_analyze(args, tol):
    A = _load(args.file)
    dom, _, a0 = parts(A, tol)
    rep = maximality_report(A, tol)
    symmetric = is_symmetric(A, tol) if rep.monotone else False
    return {
        "d": A.d,
        "graph_dim": A.graph_dim,
        "dom_dim": dom.dim,
        "a0_dim": a0.dim,
        "monotone": rep.monotone,
        "symmetric": symmetric,
        "adjoint_monotone": rep.adjoint_monotone,
        "maximal_by_dim": rep.maximal_by_dim,
        "sz_surjective": rep.sz_surjective,
    }, EXIT_OK


def cmd_fitz(args, tol):
    A = _load(args.file)
    n = parse_order(args.order)
    p = parse_point(args.point, A.d)
    if not is_monotone(A, tol):
        raise CLIError(EXIT_PRECONDITION, "relation is not monotone", "not_monotone")
    out = {"order": "inf" if n == INF_ORDER else n}
    try:
        if n == INF_ORDER:
            F, out["method"] = fitz_inf(A, tol), "closed_form_limit"
        elif args.closed_form:
            F, out["method"] = fitz_n_closed_symmetric(A, n, tol), "closed_form"
        else:
            F, out["method"] = fitz_n(A, n, tol), "recursion"
    except (NotMonotone, NotSymmetric, NotMaximal) as exc:
        raise CLIError(EXIT_PRECONDITION, str(exc), _REASONS[type(exc)]) from exc
    except (InnerNotConcave, EmptyDomain):
        # F_{A,n} is identically +inf
        F = None
        out["method"] = "recursion"
        out["identically_infinite"] = True
    out["value"] = encode_value(math.inf if F is None else F(p))
    if args.oracle is not None:
        if n == INF_ORDER:
            raise CLIError(EXIT_PRECONDITION, "the oracle needs a finite order", "order")
        out["oracle_lower_bound"] = encode_value(
            brute_fitz_n(A, n, p, budget=args.oracle, seed=args.seed))
    return out, EXIT_OK


def cmd_verify(args, tol):
    if args.seeds < 1 or args.dim_max < 1:
        raise CLIError(EXIT_PRECONDITION, "--seeds and --dim-max must be >= 1", "range")
    relation = _load(args.file) if args.file else None
    report = run_suite(args.suite, args.seeds, args.dim_max, tol, relation, args.jobs)
    return report, EXIT_OK if not report["failures"] else EXIT_FAIL


def cmd_random(args, tol):
    if args.dim < 1:
        raise CLIError(EXIT_PRECONDITION, "--dim must be >= 1", "dim")
    A = random_relation(args.seed, args.dim, args.kind)
    text = dump_relation(A)
    if args.out is None:
        sys.stdout.write(text)
        return None, EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(EXIT_IO, f"{args.out}: {exc.strerror or exc}") from exc
    return {"out": args.out, "kind": args.kind, "d": args.dim, "seed": args.seed,
            "graph_dim": A.graph_dim}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monorel",
        description="Monotone linear relations and their Fitzpatrick functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural flags of a relation file")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fitz", help="evaluate a Fitzpatrick function of order n")
    p.add_argument("file")
    p.add_argument("--order", default="2", help="integer >= 2 or 'inf'")
    p.add_argument("--point", required=True, help="'x1,...,xd;y1,...,yd'")
    p.add_argument("--closed-form", action="store_true",
                   help="use the symmetric closed form (symmetric maximal relations only)")
    p.add_argument("--oracle", type=int, metavar="BUDGET",
                   help="also report a sampled lower bound with this many samples")
    p.add_argument("--seed", type=int, default=0, help="oracle seed")
    p.set_defaults(func=cmd_fitz)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--dim-max", type=int, default=5)
    p.add_argument("--file", help="run the suite on this relation instead of seeds")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="write a seeded random relation")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        tol = tolerances_from_env()
        doc, code = args.func(args, tol)
    except CLIError as exc:
        print(f"monorel: {exc}", file=sys.stderr)
        if exc.reason:
            _emit({"error": "precondition", "reason": exc.reason, "message": str(exc)})
        return exc.code
    except MonorelError as exc:
        print(f"monorel: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_PRECONDITION
    if doc is not None:
        _emit(doc)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
