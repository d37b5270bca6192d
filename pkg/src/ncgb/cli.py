"""Command line entry point.  Every command prints JSON with sorted keys.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input
errors.  ``NCGB_CAP`` sets the default total-degree cap (12).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import (
    ConstraintError,
    check_normal_element,
    check_regular_quotient,
    instantiate_family,
    verify_family,
)
from .dsl import DslError, parse_expression, parse_field, parse_presentation
from .field import render_scalar
from .groebner import complete_to_degree, unresolved_compositions
from .monomial import hilbert_series_monomial, invariants_estimate, lyndon_series, reduced_chain_profile
from .search import load_eliminations, search_type

__all__ = ["main", "run_command"]


class UsageError(Exception):
    pass


def default_cap() -> int:
    raw = os.environ.get("NCGB_CAP")
    if raw is None:
        return 12
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"NCGB_CAP must be an integer, got {raw!r}") from None


def _params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _presentation(args):
    if args.family:
        fld = parse_field(args.field) if args.field else None
        return instantiate_family(args.family, _params(args.param), fld)
    if not args.file:
        raise UsageError("give a presentation file (or '-') or --family")
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(str(e)) from None
    return parse_presentation(text)


def _basis(P, bound):
    if not P.relations:
        return None
    return complete_to_degree(P.relations, bound)


def cmd_gb(args):
    P = _presentation(args)
    bound = args.max_total_degree if args.max_total_degree is not None else default_cap()
    state = _basis(P, bound)
    basis = state.basis if state else []
    X = P.alphabet
    return 0, {
        "bound": bound,
        "basis": [
            {"leading_word": X.render(g.lw), "polynomial": g.render(), "degree": list(g.degree()), "minimal": m}
            for g, m in zip(basis, state.minimal if state else [])
        ],
        "unresolved_compositions": len(unresolved_compositions(basis, bound)) if basis else 0,
    }


def _leading(P, cap):
    state = _basis(P, cap)
    return state.leading_words if state else []


def cmd_hilbert(args):
    P = _presentation(args)
    cap = args.cap if args.cap is not None else default_cap()
    H = hilbert_series_monomial(_leading(P, cap), cap, P.alphabet)
    return 0, (H.collapse_list() if args.collapse else H.table())


def cmd_chains(args):
    P = _presentation(args)
    cap = args.cap if args.cap is not None else default_cap()
    V = _leading(P, cap)
    est = invariants_estimate(V, cap, P.alphabet)
    return 0, {
        "global_dimension": est.global_dimension,
        "finite": est.finite,
        "levels": [[list(d) for d in lvl] for lvl in est.levels],
        "reduced_levels": [[list(d) for d in lvl] for lvl in reduced_chain_profile(est.levels)],
        "obstructions": len(V),
        "bound_holds": est.bound_holds(),
    }


def cmd_lyndon(args):
    P = _presentation(args)
    cap = args.cap if args.cap is not None else default_cap()
    V = _leading(P, cap)
    try:
        rep, series = lyndon_series(V, cap, P.alphabet)
    except ValueError as e:
        return 1, {"error": str(e)}
    return 0, {
        "words": [P.alphabet.render(w) for w in rep.words],
        "degrees": [list(d) for d in rep.degrees],
        "finite": rep.finite,
        "gk_dimension": rep.gk_dimension,
        "series_matches": series == hilbert_series_monomial(V, cap, P.alphabet),
    }


def cmd_normal(args):
    P = _presentation(args)
    cap = args.cap if args.cap is not None else default_cap()
    z = parse_expression(args.element, P.alphabet, P.field, P.params)
    cert = check_normal_element(z, P, cap)
    out = cert.to_json()
    if cert.normal:
        out["regular"] = check_regular_quotient(z, P, cap)
    return (0 if cert.normal else 1), out


def cmd_search(args):
    cap = args.cap if args.cap is not None else default_cap()
    elim = [] if args.no_eliminations else load_eliminations(args.eliminations)
    result = search_type(args.type, cap, elim, switch_normalized=not args.no_switch)
    from .words import Alphabet

    out = result.to_json(Alphabet.standard(2))
    if not args.json:
        out = {k: out[k] for k in ("type", "cap", "complete_leaves", "surviving_leaves")}
    return 0, out


def cmd_verify_family(args):
    cap = args.cap if args.cap is not None else default_cap()
    fld = parse_field(args.field) if args.field else None
    report = verify_family(args.name, _params(args.param), cap, fld)
    out = report.to_json()
    if not args.json:
        out = {k: out[k] for k in ("family", "params", "cap", "passed", "first_failure")}
        out["stages"] = {s.name: s.passed for s in report.stages}
    return (0 if report.passed else 1), out


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncgb", description="Noncommutative Groebner bases for graded algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("file", nargs="?", help="presentation file, or - for stdin")
        p.add_argument("--family", help="use a catalog family instead of a file")
        p.add_argument("--param", action="append", help="family parameter, name=value")
        p.add_argument("--field", help="field for the family, e.g. 'Q[j]/(j^2+1)'")
        return p

    p = with_input(sub.add_parser("gb", help="reduced Groebner basis up to a total degree"))
    p.add_argument("--max-total-degree", type=int)
    p.set_defaults(fn=cmd_gb)
    p = with_input(sub.add_parser("hilbert", help="Hilbert series up to a cap"))
    p.add_argument("--cap", type=int)
    p.add_argument("--collapse", action="store_true", help="total-degree coefficients only")
    p.set_defaults(fn=cmd_hilbert)
    p = with_input(sub.add_parser("chains", help="chain profile and global dimension"))
    p.add_argument("--cap", type=int)
    p.set_defaults(fn=cmd_chains)
    p = with_input(sub.add_parser("lyndon", help="normal Lyndon words"))
    p.add_argument("--cap", type=int)
    p.set_defaults(fn=cmd_lyndon)
    p = with_input(sub.add_parser("normal", help="check that an element is normal"))
    p.add_argument("--element", required=True)
    p.add_argument("--cap", type=int)
    p.set_defaults(fn=cmd_normal)
    p = sub.add_parser("search", help="search leading words for a resolution type")
    p.add_argument("--type", required=True, choices=["355", "347", "4445", "44455", "444"])
    p.add_argument("--cap", type=int)
    p.add_argument("--eliminations", help="recorded eliminations file (default: packaged)")
    p.add_argument("--no-eliminations", action="store_true")
    p.add_argument("--no-switch", action="store_true", help="also search shapes with deg2 > deg1 for the first relation")
    p.add_argument("--json", action="store_true", help="print the full trees")
    p.set_defaults(fn=cmd_search)
    p = sub.add_parser("verify-family", help="run the checks for a catalog family")
    p.add_argument("name")
    p.add_argument("--param", action="append")
    p.add_argument("--field")
    p.add_argument("--cap", type=int)
    p.add_argument("--json", action="store_true", help="full staged report")
    p.set_defaults(fn=cmd_verify_family)
    return ap


def run_command(argv) -> tuple:
    """Returns ``(exit status, JSON text or None)``."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return (2 if e.code else 0), None
    try:
        status, payload = args.fn(args)
    except (UsageError, DslError, ConstraintError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"ncgb: error: {msg}", file=sys.stderr)
        return 2, None
    return status, json.dumps(payload, sort_keys=True, indent=2, default=render_scalar)


def main(argv=None) -> int:
    status, text = run_command(sys.argv[1:] if argv is None else argv)
    if text is not None:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
