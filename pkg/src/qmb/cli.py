"""Command-line entry point.

Batch verbs only; every invocation fixes one algebra size with ``--n``.
Exit codes: 0 success, 2 usage or expression syntax error, 3 precondition
failure, 4 no witness within the power bound, 5 check or certificate
failure, 6 degree cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import ContextMismatchError, DegreeCapError
from .exprparse import ExprSyntaxError, parse_element
from .identities import (
    NOT_APPLICABLE,
    VERIFIED,
    check_centrality,
    check_E0_membership,
    check_gap_one,
    check_gap_r,
    check_muir,
    check_qcommutation,
    run_suite,
)
from .minors import MinorId, quantum_minor
from .ore import (
    LEFT,
    RIGHT,
    CertificateError,
    UnsatWithinBound,
    multi_minor_witness,
    solve_witness,
    verify_witness_file,
    witness_for_element,
)
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_UNSAT = 4
EXIT_CHECK_FAILED = 5
EXIT_DEGREE_CAP = 6


def _labels(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def _emit(data, fmt: str, out_path=None) -> None:
    if fmt == "json":
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    else:
        text = data if isinstance(data, str) else str(data)
        if not text.endswith("\n"):
            text += "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_nf(args) -> int:
    elem = parse_element(args.expression, args.n)
    if args.format == "json":
        _emit({"n": args.n, "normal_form": elem.render()}, "json", args.out)
    else:
        _emit(elem.render(), "text", args.out)
    return EXIT_OK


def _cmd_minor(args) -> int:
    elem = quantum_minor(args.n, args.rows, args.cols)
    if args.format == "json":
        _emit({"n": args.n, "rows": list(args.rows), "cols": list(args.cols),
               "minor": elem.render()}, "json", args.out)
    else:
        _emit(elem.render(), "text", args.out)
    return EXIT_OK


def _cmd_commutator(args) -> int:
    a = parse_element(args.left, args.n)
    b = parse_element(args.right, args.n)
    result = a * b - b * a
    if args.format == "json":
        _emit({"n": args.n, "commutator": result.render()}, "json", args.out)
    else:
        _emit(result.render(), "text", args.out)
    return EXIT_OK


def _cmd_identity(args) -> int:
    kind = args.kind
    if kind != "muir" and (args.k is None or args.l is None):
        raise SystemExit(f"--k and --l are required for {kind} checks")
    if kind == "centrality":
        res = check_centrality(args.n, args.rows, args.cols, args.k, args.l)
    elif kind == "q-commutation":
        res = check_qcommutation(args.n, args.rows, args.cols, args.k, args.l)
    elif kind == "muir":
        if args.cols2 is None:
            raise SystemExit("--cols2 is required for muir checks")
        res = check_muir(args.n, args.rows, args.cols, args.cols2)
    elif kind == "gap-one":
        res = check_gap_one(args.n, args.rows, args.cols, args.k, args.l)
    elif kind == "gap-r":
        r = args.r
        if r is None:
            r = sum(1 for x in args.cols if x < args.l)
        res = check_gap_r(args.n, args.rows, args.cols, args.k, args.l, r)
    else:  # membership
        if args.element is None:
            raise SystemExit("--element is required for membership checks")
        elem = parse_element(args.element, args.n)
        res = check_E0_membership(
            args.n, args.rows, args.cols, (args.k, args.l),
            [(c, w) for w, c in elem.terms()],
        )
    _emit(res.to_json(), "json", args.out)
    if res.status == VERIFIED:
        return EXIT_OK
    if res.status == NOT_APPLICABLE:
        return EXIT_PRECONDITION
    return EXIT_CHECK_FAILED


def _cmd_suite(args) -> int:
    report = run_suite(
        n_max=args.n,
        size_cap=args.size_cap,
        include_membership=not args.no_membership,
    )
    if args.format == "text":
        _emit("\n".join(report.summary_lines()), "text", args.out)
    else:
        _emit(report.to_json(), "json", args.out)
    return EXIT_OK if report.all_verified() else EXIT_CHECK_FAILED


def _cmd_ore(args) -> int:
    if len(args.minor_rows) != len(args.minor_cols):
        raise SystemExit("--minor-rows and --minor-cols must be given the same number of times")
    elem = parse_element(args.elem, args.n)
    side = LEFT if args.side == "left" else RIGHT
    minors = [MinorId(r, c) for r, c in zip(args.minor_rows, args.minor_cols)]
    if len(minors) == 1:
        if args.strategy == "solver":
            w = solve_witness(args.n, minors[0], elem, side, m_max=args.max_power)
        else:
            w = witness_for_element(args.n, minors[0], elem, side, args.strategy,
                                    m_max=args.max_power)
        data = w.to_json()
    else:
        chain = multi_minor_witness(args.n, minors, elem, side, strategy=args.strategy)
        data = chain.to_json()
    _emit(data, "json", args.out)
    return EXIT_OK


def _cmd_verify_witness(args) -> int:
    w = verify_witness_file(args.path)
    _emit({"path": args.path, "certified": True, "power": w.power, "side": w.side}, "json", None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmb",
        description="Exact quantum-matrix-algebra workbench: normal forms, minors, "
        "identity sweeps, certified Ore witnesses.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, with_n=True):
        if with_n:
            p.add_argument("--n", type=int, required=True, help="matrix size (fixes the algebra)")
        p.add_argument("--format", choices=("text", "json"), default=None)
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")

    p = sub.add_parser("nf", help="normal form of an expression")
    p.add_argument("expression")
    common(p)
    p.set_defaults(func=_cmd_nf, default_format="text")

    p = sub.add_parser("minor", help="expand a quantum minor")
    p.add_argument("--rows", type=_labels, required=True)
    p.add_argument("--cols", type=_labels, required=True)
    common(p)
    p.set_defaults(func=_cmd_minor, default_format="text")

    p = sub.add_parser("commutator", help="normal form of a commutator [a, b]")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(func=_cmd_commutator, default_format="text")

    p = sub.add_parser("identity", help="check one identity configuration")
    p.add_argument("--kind", required=True,
                   choices=("centrality", "q-commutation", "muir", "gap-one", "gap-r", "membership"))
    p.add_argument("--rows", type=_labels, required=True)
    p.add_argument("--cols", type=_labels, required=True)
    p.add_argument("--cols2", type=_labels, default=None, help="second column set (muir)")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--r", type=int, default=None, help="gap index (gap-r; inferred when omitted)")
    p.add_argument("--element", default=None, help="element expression (membership)")
    common(p)
    p.set_defaults(func=_cmd_identity, default_format="json")

    p = sub.add_parser("suite", help="sweep all identity configurations up to caps")
    p.add_argument("--n", type=int, default=4, help="largest matrix size to sweep")
    p.add_argument("--size-cap", type=int, default=3, help="largest minor size")
    p.add_argument("--no-membership", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_suite, default_format="json")

    p = sub.add_parser("ore", help="compute a certified Ore witness")
    p.add_argument("--minor-rows", type=_labels, action="append", required=True)
    p.add_argument("--minor-cols", type=_labels, action="append", required=True)
    p.add_argument("--elem", required=True)
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--max-power", type=int, default=None)
    p.add_argument("--strategy", choices=("solver", "constructive", "both"), default="solver")
    common(p)
    p.set_defaults(func=_cmd_ore, default_format="json")

    p = sub.add_parser("verify-witness", help="re-check a witness file bit-exactly")
    p.add_argument("path")
    p.set_defaults(func=_cmd_verify_witness, default_format="json")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) is None:
        args.format = getattr(args, "default_format", "text")
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        print(f"qmb: syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsatWithinBound as exc:
        print(f"qmb: {exc}", file=sys.stderr)
        return EXIT_UNSAT
    except (CertificateError,) as exc:
        print(f"qmb: certificate failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except DegreeCapError as exc:
        print(f"qmb: {exc}", file=sys.stderr)
        return EXIT_DEGREE_CAP
    except (ValueError, ContextMismatchError, FileNotFoundError) as exc:
        print(f"qmb: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
