"""Command-line front-end.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 for success
(and for admissible verdicts), 1 for negative verdicts, 2 for parse or
resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .admissible import NOT_ADMISSIBLE, admissible, unifiable
from .axioms import alpha
from .basis import build_basis, render
from .chains import ProductAlgebra, parse_algebra
from .consequence import derivable, derivable_q1
from .errors import FormulaSyntaxError, MVRulesError, ResourceGuardError
from .formulas import formula_to_text, parse_formula, parse_rule
from .mcnaughton import PLFunc, synthesize, term_to_pl
from .pairs import ReducedPair, is_reduced, reduce_pair


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(part) for part in text.split(",")]


def _pair_from_args(args) -> ReducedPair:
    I, J = _int_list(args.I), _int_list(args.J)
    if is_reduced(I, J):
        return ReducedPair(frozenset(I), frozenset(J))
    if getattr(args, "strict_pair", False):
        raise MVRulesError(f"pair (I={I}, J={J}) is not reduced")
    pair = reduce_pair(set(I), set(J))
    print(f"warning: pair reduced to I={sorted(pair.I)} J={sorted(pair.J)}",
          file=sys.stderr)
    return pair


def _add_pair_args(sub):
    sub.add_argument("--I", default="", help="comma-separated finite-chain indices")
    sub.add_argument("--J", default="", help="comma-separated lex-chain indices")
    sub.add_argument("--strict-pair", action="store_true",
                     help="error on non-reduced pairs instead of auto-reducing")


def _format_countermodel(factors, assignment) -> dict:
    prod = ProductAlgebra(tuple(factors))
    return {"algebra": str(prod),
            "assignment": {name: prod.format_element(value)
                           for name, value in sorted(assignment.items())}}


def _check_one(text: str, pair: ReducedPair) -> dict:
    rule = parse_rule(text)
    report = admissible(rule, pair)
    out = {"rule": text.strip(), "verdict": report.verdict}
    if report.unifier is not None:
        out["witness"] = {k: v for k, v in sorted(report.unifier.items())}
    if report.countermodel is not None:
        out["countermodel"] = _format_countermodel(*report.countermodel)
    return out


def cmd_basis(args) -> int:
    pair = _pair_from_args(args)
    basis = build_basis(pair, cc_range=args.cc_range)
    sys.stdout.write(render(basis, args.format))
    return 0


def cmd_check(args) -> int:
    pair = _pair_from_args(args)
    if args.rule:
        texts = [args.rule]
    else:
        with open(args.rules_file, encoding="utf-8") as fh:
            texts = [line for line in (raw.strip() for raw in fh)
                     if line and not line.startswith("#")]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(lambda t: _check_one(t, pair), texts))
    else:
        reports = [_check_one(t, pair) for t in texts]
    if args.format == "json":
        print(json.dumps({"version": "1", "results": reports}, indent=2))
    else:
        for rep in reports:
            extra = ""
            if "countermodel" in rep:
                cm = rep["countermodel"]
                extra = f"  countermodel in {cm['algebra']}: {cm['assignment']}"
            print(f"{rep['verdict']}: {rep['rule']}{extra}")
    return 0 if all(r["verdict"] != NOT_ADMISSIBLE for r in reports) else 1


def _cmd_derivable(args, checker) -> int:
    pair = _pair_from_args(args)
    rule = parse_rule(args.rule)
    res = checker(rule, pair)
    if res:
        print("DERIVABLE")
        return 0
    assignment = {name: res.algebra.format_element(value)
                  for name, value in sorted(res.witness.items())}
    print(f"NOT DERIVABLE  countermodel in {res.algebra}: {assignment}")
    return 1


def cmd_alpha(args) -> int:
    pair = _pair_from_args(args)
    term = alpha(pair)
    print(formula_to_text(term))
    if args.pl_json:
        arr = term_to_pl(term).to_json_array()
        print(json.dumps({"version": "1", "plfunc": arr}))
    return 0


def cmd_eval(args) -> int:
    algebra = parse_algebra(args.algebra)
    assignment = {}
    for item in args.assign:
        name, _, value = item.partition("=")
        if not _:
            raise MVRulesError(f"bad assignment {item!r}, expected name=element")
        assignment[name.strip()] = algebra.parse_element(value)
    from .chains import eval_formula
    value = eval_formula(parse_formula(args.term), assignment, algebra)
    print(algebra.format_element(value))
    return 0


def cmd_unify(args) -> int:
    formulas = [parse_formula(part) for part in args.formulas.split(";") if part.strip()]
    ok, witness = unifiable(formulas)
    if ok:
        print("UNIFIABLE " + json.dumps({k: v for k, v in sorted(witness.items())}))
        return 0
    print("NOT UNIFIABLE")
    return 1


def cmd_synth(args) -> int:
    with open(args.pl, encoding="utf-8") as fh:
        data = json.load(fh)
    arr = data["plfunc"] if isinstance(data, dict) else data
    g = PLFunc.from_json_array(arr)
    print(formula_to_text(synthesize(g)))
    return 0


def cmd_pl(args) -> int:
    g = term_to_pl(parse_formula(args.term))
    print(json.dumps({"version": "1", "plfunc": g.to_json_array()}))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvrules",
        description="admissible-rule toolkit for the proper axiomatic "
                    "extensions of infinite-valued Lukasiewicz logic")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("basis", help="emit the finite basis of admissible rules")
    _add_pair_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cc-range", action="store_true",
                   help="emit the passive family CC_2..CC_max(n,2) instead "
                        "of the single critical CC_n")
    p.set_defaults(func=cmd_basis)

    p = subs.add_parser("check", help="admissibility verdicts for rules")
    _add_pair_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rule", help="rule text 'f1, ..., fk / f'")
    group.add_argument("--rules-file", help="file with one rule per line")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for batch checks (order preserved)")
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("derivable", help="derivability in the extension")
    _add_pair_args(p)
    p.add_argument("--rule", required=True)
    p.set_defaults(func=lambda a: _cmd_derivable(a, derivable))

    p = subs.add_parser("derivable-q1",
                        help="derivability over the s=1 chain generators")
    _add_pair_args(p)
    p.add_argument("--rule", required=True)
    p.set_defaults(func=lambda a: _cmd_derivable(a, derivable_q1))

    p = subs.add_parser("alpha", help="one-variable axiom of the variety")
    _add_pair_args(p)
    p.add_argument("--pl-json", action="store_true",
                   help="also print the piecewise-linear function as JSON")
    p.set_defaults(func=cmd_alpha)

    p = subs.add_parser("eval", help="evaluate a formula in a chain")
    p.add_argument("--algebra", required=True, help='"L(n)" or "Lex(n,s)"')
    p.add_argument("--term", required=True)
    p.add_argument("--assign", action="append", default=[],
                   metavar="NAME=ELEMENT",
                   help='e.g. p=1/2 or x=(0,1)@Lex(1,0); repeatable')
    p.set_defaults(func=cmd_eval)

    p = subs.add_parser("unify", help="common-unifier check for formulas")
    p.add_argument("--formulas", required=True,
                   help="semicolon-separated formula list")
    p.set_defaults(func=cmd_unify)

    p = subs.add_parser("synth", help="McNaughton synthesis from PL JSON")
    p.add_argument("--pl", required=True, help="path to a PLFunc JSON file")
    p.set_defaults(func=cmd_synth)

    p = subs.add_parser("pl", help="piecewise-linear function of a term")
    p.add_argument("--term", required=True)
    p.set_defaults(func=cmd_pl)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormulaSyntaxError, ResourceGuardError, MVRulesError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
