"""Emit the finite basis of admissible rules of an extension.

For a reduced pair the basis consists of the four standard implicational
axioms plus modus ponens, the one-variable axiom of the variety, one
disjunctified scheme per prime in Div(J) \\ Div(I), one per prime in
Div(I) (carrying the axiom of the subvariety cut out by that prime's
multiples in I), and the single passive scheme with the critical exponent
n = max{max I, max J + 1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .axioms import alpha
from .formulas import (Formula, Iff, Imp, Join, Neg, Pow, Rule, Var, Zero,
                       formula_to_text, rule_to_text)
from .pairs import ReducedPair, critical_n, div_sets

PHI, PSI, CHI, GAMMA = Var("phi"), Var("psi"), Var("chi"), Var("gamma")

# the canonical implicational Hilbert axioms of the logic
L_AXIOMS = (
    ("L1", Imp(PHI, Imp(PSI, PHI))),
    ("L2", Imp(Imp(PHI, PSI), Imp(Imp(PSI, CHI), Imp(PHI, CHI)))),
    ("L3", Imp(Imp(Imp(PHI, PSI), PSI), Imp(Imp(PSI, PHI), PHI))),
    ("L4", Imp(Imp(Neg(PHI), Neg(PSI)), Imp(PSI, PHI))),
)

MP = Rule((PHI, Imp(PHI, PSI)), PSI)


@dataclass(frozen=True)
class AxiomScheme:
    name: str
    formula: Formula

    @property
    def text(self) -> str:
        return formula_to_text(self.formula)


@dataclass(frozen=True)
class RuleScheme:
    name: str
    params: dict
    rule: Rule
    display: str  # text rendering; bracketed for the disjunctified schemes

    @property
    def premises_text(self) -> list[str]:
        return [formula_to_text(p) for p in self.rule.premises]

    @property
    def conclusion_text(self) -> str:
        return formula_to_text(self.rule.conclusion)


@dataclass(frozen=True)
class Basis:
    pair: ReducedPair
    n: int
    axioms: tuple
    rules: tuple
    notes: tuple = field(default_factory=tuple)


def _delta_premise(p: int) -> Formula:
    return Join(Iff(Pow(Neg(PHI), p - 1), PHI), Iff(PSI, CHI))


def _delta_premise_text(p: int) -> str:
    return (f"[{formula_to_text(Iff(Pow(Neg(PHI), p - 1), PHI))}]"
            f" or [{formula_to_text(Iff(PSI, CHI))}]")


def delta_q_scheme(p: int) -> RuleScheme:
    rule = Rule((_delta_premise(p),), Iff(PSI, CHI))
    display = f"{_delta_premise_text(p)} / {formula_to_text(Iff(PSI, CHI))}"
    return RuleScheme(f"DeltaQ_{p}", {"p": p}, rule, display)


def delta_u_scheme(q: int, sub_axiom: Formula, I_q) -> RuleScheme:
    conclusion = Join(sub_axiom, Iff(PSI, CHI))
    rule = Rule((_delta_premise(q),), conclusion)
    display = f"{_delta_premise_text(q)} / {formula_to_text(conclusion)}"
    return RuleScheme(f"DeltaU_{q}", {"q": q, "I_q": sorted(I_q)}, rule, display)


def cc_scheme(n: int) -> RuleScheme:
    rule = Rule((Neg(Pow(Join(PHI, Neg(PHI)), n)),), Zero())
    return RuleScheme(f"CC_{n}", {"n": n}, rule, rule_to_text(rule))


def build_basis(pair: ReducedPair, *, cc_range: bool = False) -> Basis:
    """The basis for the extension of the reduced pair.

    With cc_range=True the single passive scheme is replaced by the family
    CC_k for 2 <= k <= max(n, 2), covering the k = 1 corner where the
    passive-basis source ranges over k > 1 only.
    """
    n = critical_n(pair)
    data = div_sets(pair)
    axioms = [AxiomScheme(name, f) for name, f in L_AXIOMS]
    axioms.append(AxiomScheme("alpha", alpha(pair, var="gamma")))

    rules: list[RuleScheme] = [RuleScheme("MP", {}, MP, rule_to_text(MP))]
    for p in data.primes_J_not_I:
        rules.append(delta_q_scheme(p))
    for q in data.primes_I:
        sub_pair = ReducedPair(data.I_q[q], frozenset())
        rules.append(delta_u_scheme(q, alpha(sub_pair, var="gamma"), data.I_q[q]))

    notes: list[str] = []
    if cc_range:
        for k in range(2, max(n, 2) + 1):
            rules.append(cc_scheme(k))
        notes.append("cc-range mode: passive schemes CC_k emitted for "
                     f"2 <= k <= {max(n, 2)} instead of the single CC_{n}")
    else:
        rules.append(cc_scheme(n))
        if n == 1:
            notes.append("n = 1: CC_1 emitted although the passive basis it "
                         "specializes ranges over exponents above 1")
    return Basis(pair, n, tuple(axioms), tuple(rules), tuple(notes))


def render(basis: Basis, fmt: str = "text") -> str:
    if fmt == "text":
        return _render_text(basis)
    if fmt == "json":
        return json.dumps(_as_dict(basis), indent=2, sort_keys=False) + "\n"
    raise ValueError(f"unknown format {fmt!r} (expected text or json)")


def _render_text(basis: Basis) -> str:
    lines = [f"basis for pair I={sorted(basis.pair.I)} J={sorted(basis.pair.J)} (n={basis.n})",
             "axioms:"]
    for ax in basis.axioms:
        lines.append(f"  {ax.name}: {ax.text}")
    lines.append("rules:")
    for rule in basis.rules:
        lines.append(f"  {rule.name}: {rule.display}")
    for note in basis.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _as_dict(basis: Basis) -> dict:
    return {
        "version": "1",
        "pair": {"I": sorted(basis.pair.I), "J": sorted(basis.pair.J)},
        "n": basis.n,
        "axioms": [{"name": ax.name, "text": ax.text} for ax in basis.axioms],
        "rules": [{"name": r.name,
                   "params": r.params,
                   "premises": r.premises_text,
                   "conclusion": r.conclusion_text}
                  for r in basis.rules],
        "notes": list(basis.notes),
    }


def basis_json(basis: Basis) -> dict:
    return _as_dict(basis)
