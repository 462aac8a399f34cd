"""Command-line interface.

Exit status: 0 success, 1 domain error, 2 usage error, 3 indeterminate.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from . import gabrielov as gb
from .acceptance import run_all
from .division import echelon_divide
from .echelon import ascii_staircase, initial_region_to_degree
from .io import (
    SchemaError,
    check_compatible,
    division_doc,
    dumps,
    echelon_doc,
    load_echelon,
    load_series,
    series_doc,
    write_json,
)
from .oracle import PrecisionError, oracle_membership, oracle_relation_order
from .series import DimensionError, format_rational
from .stdbasis import MAX_ROUNDS, InadmissibleTargetError, enlarge, enlarge_reduced, membership_mod_degree

OK, DOMAIN, USAGE, INDETERMINATE = 0, 1, 2, 3

log = logging.getLogger("echelons")


class UsageError(Exception):
    pass


def parse_exponent(text: str, n: int):
    try:
        e = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"exponent must be comma-separated integers, got {text!r}") from None
    if len(e) != n or any(v < 0 for v in e):
        raise UsageError(f"exponent {text!r} needs {n} non-negative entries")
    return e


def emit(doc, out: Optional[str]) -> None:
    if out:
        write_json(doc, out)
    else:
        sys.stdout.write(dumps(doc))


def _staircase(args, p, basis) -> None:
    if getattr(args, "ascii_staircase", None) is None:
        return
    d = args.ascii_staircase
    region = initial_region_to_degree(p, basis, d)
    fixed = (0,) * max(p.nvars - 2, 0)
    print(f"initial region, {p.names[0]} across, {p.names[1] if p.nvars > 1 else ''} up, others {list(fixed)}:")
    print(ascii_staircase(region, p.nvars, d, fixed))


# --- commands -------------------------------------------------------------


def cmd_divide(args) -> int:
    p = load_echelon(args.echelon)
    f, names = load_series(args.input)
    check_compatible(f, names, p)
    res = echelon_divide(f, p, scope=args.scope)
    emit(division_doc(res, p.names), args.out)
    _staircase(args, p, p.generators)
    return OK


def cmd_stdbasis(args) -> int:
    p = load_echelon(args.echelon)
    target = parse_exponent(args.target_monomial, p.nvars) if args.target_monomial else None
    run = enlarge_reduced if args.reduce else enlarge
    st = run(p, target=target, degree_cap=args.degree_cap, max_rounds=args.max_rounds)
    doc = {
        "status": st.status,
        "rounds": st.rounds,
        "covering_element": st.covering_element(target) if target else None,
        "echelon": echelon_doc(st.presentation(p)),
    }
    emit(doc, args.out)
    if args.trace:
        write_json({"trace": [t.to_json() for t in st.trace]}, args.trace)
    _staircase(args, p, st.F)
    return INDETERMINATE if st.status == MAX_ROUNDS else OK


def cmd_member(args) -> int:
    p = load_echelon(args.echelon)
    f, names = load_series(args.input)
    check_compatible(f, names, p)
    if args.oracle:
        answer = oracle_membership(f, p, args.degree).feasible
    else:
        answer = membership_mod_degree(f, p, args.degree, max_rounds=args.max_rounds).member
    if answer is None:
        print("indeterminate")
        return INDETERMINATE
    print("true" if answer else "false")
    return OK


def cmd_relations(args) -> int:
    p = load_echelon(args.echelon)
    rep = oracle_relation_order(p, args.degree, args.multiplier_degree)
    doc = {
        "degree": rep.degree,
        "multiplier_degree": rep.multiplier_degree,
        "kernel_dim": rep.kernel_dim,
        "min_order": rep.min_order,
        "threshold": rep.threshold,
        "genuine_below_threshold": rep.genuine,
        "census": {str(k): v for k, v in rep.census.items()},
    }
    emit(doc, args.out)
    return OK


def cmd_verify(args) -> int:
    outcomes = run_all()
    for o in outcomes:
        print(o.line())
    failed = [o.number for o in outcomes if not o.passed]
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} criteria pass" + (f"; failing: {failed}" if failed else ""))
    return DOMAIN if failed else OK


# --- gabrielov subcommands ------------------------------------------------


def cmd_gk(args) -> int:
    if args.algorithmic:
        s = gb.g_algorithmic(args.k, args.prec)
    else:
        s = gb.g_closed(args.k, args.prec)
    if args.json:
        emit(series_doc(s, gb.NAMES), args.out)
    else:
        print(gb.format_bracket(s, terms=args.terms))
    return OK


def cmd_qtable(args) -> int:
    rows = gb.q_table(args.kmax, args.width)
    if args.json:
        emit(
            [
                {"k": r["k"], "q_kk": format_rational(r["q_kk"]), "relative": [format_rational(c) for c in r["relative"]]}
                for r in rows
            ],
            args.out,
        )
        return OK
    for r in rows:
        k = r["k"]
        rel = " + ".join(
            (f"x^{k}z^{i}" if c == 1 else f"{format_rational(c)}*x^{k}z^{i}")
            for i, c in zip(range(k, k + args.width), r["relative"])
        )
        print(f"g_{k} = {format_rational(r['q_kk'])} * [{rel} + ...]")
    return OK


def cmd_abc(args) -> int:
    a, b, c = gb.abc(args.k, args.prec)
    doc = {
        "k": args.k,
        "a": series_doc(a, gb.NAMES),
        "b": series_doc(b, gb.NAMES),
        "c": series_doc(c, gb.NAMES),
    }
    if args.json or args.out:
        emit(doc, args.out)
    else:
        for name, s in zip("abc", (a, b, c)):
            print(f"{name}_{args.k} = {s.to_str(gb.NAMES)}")
    return OK


def cmd_e(args) -> int:
    s = gb.e_original(args.prec) if args.original else gb.e_combination(args.kmax, args.prec, args.start)
    emit(series_doc(s, gb.NAMES), args.out)
    return OK


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def cmd_witness(args) -> int:
    """JSON report to --out (table on stdout), or JSON on stdout and the
    table on stderr."""
    rep = _jsonable(gb.divergence_report(args.kmax, args.prec))
    if args.out:
        write_json(rep, args.out)
        table = sys.stdout
    else:
        sys.stdout.write(dumps(rep))
        table = sys.stderr
    print(f"{'k':>3}  {'r_k':>24}  {'a: x^2y^(k-2)':>24}  {'b: y^(k-1)':>24}  {'c: xy^(k-2)':>24}  {'r_(k+1)/r_k':>12}", file=table)
    for row in rep["rows"]:
        print(
            f"{row['k']:>3}  {row['r_k']:>24}  {row['a_coeff']:>24}  {row['b_coeff']:>24}  "
            f"{row['c_coeff']:>24}  {row.get('ratio', ''):>12}",
            file=table,
        )
    return OK


def cmd_echelon(args) -> int:
    emit(echelon_doc(gb.gabrielov_echelon(args.prec)), args.out)
    return OK


# --- parser ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="echelons", description="Echelons of power series: division, standard bases, Gabrielov's example.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("divide", help="echelon division of a series")
    d.add_argument("--echelon", required=True)
    d.add_argument("--input", required=True)
    d.add_argument("--scope", type=int, help="assigned scope of the input, for the remainder scope")
    d.add_argument("--out")
    d.add_argument("--ascii-staircase", type=int, metavar="D")
    d.set_defaults(func=cmd_divide)

    s = sub.add_parser("stdbasis", help="enlarge a generator system by S-combinations")
    s.add_argument("--echelon", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--target-monomial")
    g.add_argument("--degree-cap", type=int)
    s.add_argument("--reduce", action="store_true", help="divide S-combinations before inserting them")
    s.add_argument("--max-rounds", type=int)
    s.add_argument("--trace")
    s.add_argument("--out")
    s.add_argument("--ascii-staircase", type=int, metavar="D")
    s.set_defaults(func=cmd_stdbasis)

    m = sub.add_parser("member", help="membership modulo terms of degree > d")
    m.add_argument("--echelon", required=True)
    m.add_argument("--input", required=True)
    m.add_argument("--degree", type=int, required=True)
    m.add_argument("--oracle", action="store_true", help="decide by linear algebra instead")
    m.add_argument("--max-rounds", type=int)
    m.set_defaults(func=cmd_member)

    r = sub.add_parser("relations", help="orders of truncated relations among the generators")
    r.add_argument("--echelon", required=True)
    r.add_argument("--degree", type=int, required=True)
    r.add_argument("--multiplier-degree", type=int)
    r.add_argument("--out")
    r.set_defaults(func=cmd_relations)

    v = sub.add_parser("verify", help="run the acceptance suite")
    v.set_defaults(func=cmd_verify)

    gp = sub.add_parser("gabrielov", help="Gabrielov's example")
    gsub = gp.add_subparsers(dest="sub", required=True, parser_class=_Parser)

    x = gsub.add_parser("gk")
    x.add_argument("--k", type=int, required=True)
    x.add_argument("--prec", type=int, required=True)
    how = x.add_mutually_exclusive_group()
    how.add_argument("--closed", action="store_true")
    how.add_argument("--algorithmic", action="store_true")
    x.add_argument("--terms", type=int, default=5)
    x.add_argument("--json", action="store_true")
    x.add_argument("--out")
    x.set_defaults(func=cmd_gk)

    x = gsub.add_parser("qtable")
    x.add_argument("--kmax", type=int, required=True)
    x.add_argument("--width", type=int, default=5)
    x.add_argument("--json", action="store_true")
    x.add_argument("--out")
    x.set_defaults(func=cmd_qtable)

    x = gsub.add_parser("abc")
    x.add_argument("--k", type=int, required=True)
    x.add_argument("--prec", type=int, required=True)
    x.add_argument("--json", action="store_true")
    x.add_argument("--out")
    x.set_defaults(func=cmd_abc)

    x = gsub.add_parser("e")
    x.add_argument("--kmax", type=int, default=8)
    x.add_argument("--prec", type=int, required=True)
    x.add_argument("--start", type=int, default=2)
    x.add_argument("--original", action="store_true")
    x.add_argument("--out")
    x.set_defaults(func=cmd_e)

    x = gsub.add_parser("witness")
    x.add_argument("--kmax", type=int, required=True)
    x.add_argument("--prec", type=int, required=True)
    x.add_argument("--out")
    x.set_defaults(func=cmd_witness)

    x = gsub.add_parser("echelon", help="write the generators f, g, h as an echelon document")
    x.add_argument("--prec", type=int, required=True)
    x.add_argument("--out")
    x.set_defaults(func=cmd_echelon)
    return ap


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except (SchemaError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return DOMAIN
    except (
        ValueError,
        ArithmeticError,
        DimensionError,
        PrecisionError,
        InadmissibleTargetError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN


def main() -> None:
    sys.exit(run())
