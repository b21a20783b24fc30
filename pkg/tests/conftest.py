"""Shared helpers: seeded random generators for formulas and rules."""

import random

from mvrules.formulas import (Iff, Imp, Join, Meet, Mult, Neg, Odot, One,
                              Oplus, Pow, Rule, Var, Zero)

_CORE = ("zero", "var", "neg", "oplus")
_FULL = _CORE + ("one", "odot", "imp", "join", "meet", "iff", "mult", "pow")


def random_formula(rng: random.Random, variables=("p", "q", "r"), max_size=12,
                   kinds=_FULL):
    """A random AST with at most max_size nodes."""
    if max_size <= 1:
        kind = rng.choice(("zero", "var"))
    else:
        kind = rng.choice(kinds)
    if kind == "zero":
        return Zero()
    if kind == "one":
        return One()
    if kind == "var":
        return Var(rng.choice(variables))
    if kind == "neg":
        return Neg(random_formula(rng, variables, max_size - 1, kinds))
    if kind == "mult":
        return Mult(rng.randint(0, 4), random_formula(rng, variables, max_size - 1, kinds))
    if kind == "pow":
        return Pow(random_formula(rng, variables, max_size - 1, kinds), rng.randint(0, 4))
    left_budget = rng.randint(1, max_size - 2) if max_size > 2 else 1
    left = random_formula(rng, variables, left_budget, kinds)
    right = random_formula(rng, variables, max_size - 1 - left_budget, kinds)
    ctor = {"oplus": Oplus, "odot": Odot, "imp": Imp,
            "join": Join, "meet": Meet, "iff": Iff}[kind]
    return ctor(left, right)


def random_core_formula(rng, variables=("p", "q", "r"), max_size=12):
    return random_formula(rng, variables, max_size, kinds=_CORE)


def random_rule(rng, variables=("p", "q", "r"), max_premises=2, max_size=10):
    premises = tuple(random_formula(rng, variables, max_size)
                     for _ in range(rng.randint(0, max_premises)))
    return Rule(premises, random_formula(rng, variables, max_size))
