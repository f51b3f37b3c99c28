"""``kast`` command line.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource-limit refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .cohomology import kasteleyn_class, kasteleyn_q_class, parse_cocycle, zero_class
from .exactalg import RepresentabilityError, strip_zero_roots
from .graph import GraphInputError, PlanarGraph, format_graph, from_ascii, parse_graph
from .matchings import enumerate_matchings
from .rectangles import (
    RoundingError,
    closed_form_poly,
    eigvec_check,
    general_aztec_poly,
    general_rectangle_poly,
    load_reference,
    spectrum_check,
    table_check,
)
from .singular import (
    THEOREMS,
    BudgetExceeded,
    VerificationReport,
    VerifyLimits,
    singular_polynomial,
    verify_identities,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> PlanarGraph:
    return parse_graph(_read(path))


def _resolve_class(g: PlanarGraph, name: str):
    if name == "kasteleyn":
        return kasteleyn_class(g)
    if name == "zero":
        return zero_class(g)
    if name == "q":
        return kasteleyn_q_class(g)
    if name.startswith("file="):
        return parse_cocycle(_read(name[5:]), g)
    raise InputError(f"unknown class {name!r}; use kasteleyn, zero, q or file=PATH")


def _emit_reports(reports: List[VerificationReport], as_json: bool) -> int:
    if as_json:
        print(_dump([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.identity:<18} {r.graph}")
            for note in r.notes:
                print(f"      {note}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_poly(args) -> int:
    g = _load_graph(args.input)
    c = _resolve_class(g, args.cls)
    if args.backend == "float" and any(v.qexp for v in c.values.values()):
        raise InputError("q-exponents need the exact backend")
    p = singular_polynomial(g, c, args.backend)
    print(_dump(p.to_json()) if args.json else str(p))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.input)
    limits = VerifyLimits(max_vertices=args.max_vertices, max_m=args.max_m)
    report = verify_identities(g, args.theorem, limits, seed=args.seed, description=args.input)
    return _emit_reports([report], args.json)


def cmd_matchings(args) -> int:
    g = _load_graph(args.input)
    ms = list(enumerate_matchings(g))
    if args.list:
        if args.json:
            print(_dump([str(m) for m in ms]))
        else:
            for m in ms:
                print(m)
    else:
        print(_dump({"count": len(ms)}) if args.json else len(ms))
    return EXIT_OK


def cmd_rect(args) -> int:
    M, N = args.rows, args.cols
    if M < 1 or N < 1:
        raise InputError("--rows and --cols must be positive")
    if args.mode == "closed":
        p = closed_form_poly(M, N)
        print(_dump(p.to_json()) if args.json else str(p))
        return EXIT_OK
    if args.mode == "general":
        p = general_rectangle_poly(M, N)
        print(_dump(p.to_json()) if args.json else str(p))
        return EXIT_OK
    closed = closed_form_poly(M, N)
    general = general_rectangle_poly(M, N)
    reports = [VerificationReport("closed-vs-general", f"[{M},{N}]", closed, general, closed == general)]
    ref = load_reference()
    for key in (f"[{M},{N}]", f"[{N},{M}]"):
        if key in ref:
            expected = ref[key].expanded()
            reports.append(VerificationReport("table", key, expected, general, expected == general))
            break
    reports.append(spectrum_check(M, N))
    if M * N <= 64:
        reports.append(eigvec_check(M, N))
    return _emit_reports(reports, args.json)


def cmd_aztec(args) -> int:
    if args.order < 1:
        raise InputError("--order must be positive")
    p = general_aztec_poly(args.order)
    if args.mode != "compare":
        print(_dump(p.to_json()) if args.json else str(p))
        return EXIT_OK
    key = f"aztec-{args.order}"
    ref = load_reference()
    if key not in ref:
        raise InputError(f"no reference polynomial for order {args.order}")
    expected = ref[key].expanded()
    return _emit_reports([VerificationReport("table", key, expected, p, expected == p)], args.json)


def cmd_grid(args) -> int:
    text = _read(args.input) if args.input else sys.stdin.read()
    g = from_ascii(text.strip("\n"))
    sys.stdout.write(format_graph(g))
    return EXIT_OK


def cmd_tables(args) -> int:
    return _emit_reports(table_check(), args.json)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kast", description="Singular polynomials of Kasteleyn matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="singular polynomial of a graph file")
    p.add_argument("--input", required=True)
    p.add_argument("--class", dest="cls", default="kasteleyn", help="kasteleyn|zero|q|file=PATH")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify", help="check an identity by exhaustive enumeration")
    p.add_argument("--input", required=True)
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--max-m", type=int, default=VerifyLimits.max_m)
    p.add_argument("--max-vertices", type=int, default=VerifyLimits.max_vertices)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("matchings", help="count or list perfect matchings")
    p.add_argument("--input", required=True)
    what = p.add_mutually_exclusive_group()
    what.add_argument("--count", action="store_true", default=True)
    what.add_argument("--list", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_matchings)

    p = sub.add_parser("rect", help="rectangle grid spectra")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--mode", choices=("compare", "closed", "general"), default="compare")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rect)

    p = sub.add_parser("aztec", help="Aztec diamond singular polynomial")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mode", choices=("compare", "general"), default="general")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_aztec)

    p = sub.add_parser("grid", help="convert an ASCII region (# and .) to a graph file")
    p.add_argument("--input", help="ASCII file; stdin when omitted")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("tables", help="check the embedded reference tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"kast: refused: {exc}", file=sys.stderr)
        if getattr(args, "json", False):
            print(_dump({"refused": True, "estimate": exc.estimate, "message": str(exc)}))
        return EXIT_LIMIT
    except (InputError, GraphInputError, RepresentabilityError) as exc:
        print(f"kast: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RoundingError as exc:
        print(f"kast: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
