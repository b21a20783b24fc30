"""Unifiability, passivity and admissibility of rules in the proper
axiomatic extensions.

Unifiability reduces to a Boolean check: a finite set of formulas has a
common unifier iff some {0,1}-assignment makes every member equal to 1 in
the two-element chain (substituting the constants 0 and 1 along such an
assignment is itself a unifier, and composing any unifier with a Boolean
evaluation yields such an assignment).

Admissibility is decided through almost structural completeness: a rule is
admissible iff it is passive or derivable over the s=1 chain generators;
the independent oracle checks validity over the product generators of the
least quasivariety instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .chains import FiniteChain, LexChain, eval_formula
from .consequence import (Quasiequation, derivable_q1, valid_on_product)
from .errors import ResourceGuardError, VerificationError
from .formulas import Formula, Rule, variables
from .pairs import ReducedPair

DERIVABLE = "DERIVABLE"
PASSIVE = "PASSIVE"
NOT_ADMISSIBLE = "NOT_ADMISSIBLE"


def unifiable(formulas: Iterable[Formula], *, var_guard: int = 20):
    """(True, Boolean witness) if the set has a common unifier, else
    (False, None).  The empty set is unified by the identity."""
    formulas = tuple(formulas)
    names = sorted(set().union(*(variables(f) for f in formulas)) if formulas else set())
    if len(names) > var_guard:
        raise ResourceGuardError(f"{len(names)} variables exceed the guard {var_guard}")
    boolean = FiniteChain(1)
    for bits in itertools.product((0, 1), repeat=len(names)):
        assignment = dict(zip(names, bits))
        if all(eval_formula(f, assignment, boolean, check=False) == 1
               for f in formulas):
            return True, assignment
    return False, None


def passive(rule: Rule) -> bool:
    """A rule is passive when its premises have no common unifier."""
    return not unifiable(rule.premises)[0]


def q_generators(pair: ReducedPair) -> list[tuple]:
    """Factor lists of the product generators of the least quasivariety:
    Boolean x L_m for m in I and Boolean x (s=1 lex chain) for n in J."""
    gens: list[tuple] = []
    for m in sorted(pair.I):
        gens.append((FiniteChain(1), FiniteChain(m)))
    for n in sorted(pair.J):
        gens.append((FiniteChain(1), LexChain(n, 1)))
    return gens


@dataclass
class AdmissibilityReport:
    verdict: str
    unifier: Optional[dict] = None      # Boolean unifier of the premises
    countermodel: Optional[tuple] = None  # (factors, assignment) on failure

    @property
    def admissible(self) -> bool:
        return self.verdict != NOT_ADMISSIBLE


def admissible(rule: Rule, pair: ReducedPair) -> AdmissibilityReport:
    """PASSIVE if the premises are non-unifiable, else DERIVABLE if the
    rule holds over the s=1 chain generators, else NOT_ADMISSIBLE with a
    countermodel over a product generator.

    PASSIVE is reported before DERIVABLE when both hold; admissibility
    itself is the disjunction.
    """
    uni, witness = unifiable(rule.premises)
    if not uni:
        return AdmissibilityReport(PASSIVE)
    if derivable_q1(rule, pair):
        return AdmissibilityReport(DERIVABLE, unifier=witness)
    q = Quasiequation.from_rule(rule)
    for factors in q_generators(pair):
        res = valid_on_product(q, factors)
        if res.status == "resource":
            raise ResourceGuardError(res.note)
        if res.is_invalid:
            return AdmissibilityReport(NOT_ADMISSIBLE, unifier=witness,
                                       countermodel=(factors, res.witness))
    raise VerificationError(
        "rule is neither passive nor derivable over the chain generators, "
        "yet no product-generator countermodel exists")


def admissible_oracle(rule: Rule, pair: ReducedPair) -> bool:
    """Admissibility decided directly as validity over every product
    generator of the least quasivariety."""
    q = Quasiequation.from_rule(rule)
    for factors in q_generators(pair):
        res = valid_on_product(q, factors)
        if res.status == "resource":
            raise ResourceGuardError(res.note)
        if res.is_invalid:
            return False
    return True
