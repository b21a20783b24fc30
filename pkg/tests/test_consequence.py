import itertools
import random

import pytest

from conftest import random_formula, random_rule
from mvrules.chains import (FiniteChain, LexChain, LexElem, ProductAlgebra,
                            eval_formula)
from mvrules.consequence import (Quasiequation, antecedent_satisfiable,
                                 bounded_counterexample, derivable,
                                 derivable_q1, valid_on_finite_chain,
                                 valid_on_lex_chain, valid_on_product)
from mvrules.errors import ResourceGuardError
from mvrules.formulas import parse_formula, parse_rule
from mvrules.pairs import ReducedPair


def q(text: str) -> Quasiequation:
    return Quasiequation.from_rule(parse_rule(text))


class TestFiniteChain:
    def test_halves_counterexample(self):
        res = valid_on_finite_chain(q("x + x / x"), 2)
        assert res.is_invalid and res.witness == {"x": 1}

    def test_boolean_excluded_middle(self):
        assert valid_on_finite_chain(q("/ x or ~x"), 1).is_valid

    def test_identity(self):
        for n in (1, 2, 5):
            assert valid_on_finite_chain(q("x / x"), n).is_valid

    def test_resource_guard(self):
        rule = parse_rule("/ a + b + c + d + e + f + g + h")
        with pytest.raises(ResourceGuardError):
            valid_on_finite_chain(Quasiequation.from_rule(rule), 12)

    def test_exhaustiveness_against_manual_scan(self):
        quasi = q("p + p, q / p * q")
        n = 3
        chain = FiniteChain(n)
        expected_invalid = None
        for vp, vq in itertools.product(range(n + 1), repeat=2):
            assign = {"p": vp, "q": vq}
            if all(eval_formula(a, assign, chain) == n for a in quasi.antecedents) \
                    and eval_formula(quasi.consequent, assign, chain) != n:
                expected_invalid = assign
                break
        res = valid_on_finite_chain(quasi, n)
        assert res.is_invalid == (expected_invalid is not None)


class TestLexChain:
    def test_square_zero_does_not_force_zero(self):
        # x*x ~ 0 => x ~ 0, encoded with negations on both sides
        res = valid_on_lex_chain(q("~(x*x) / ~x"), 1, 0)
        assert res.is_invalid
        chang = LexChain(1, 0)
        w = res.witness
        assert eval_formula(parse_formula("~(x*x)"), w, chang) == chang.top
        assert eval_formula(parse_formula("~x"), w, chang) != chang.top
        # the canonical witness x = (0, 1) is found by bounded enumeration
        assert bounded_counterexample(q("~(x*x) / ~x"), chang, 4) is not None

    def test_excluded_middle_strong_form_valid(self):
        res = valid_on_lex_chain(q("/ x + ~x"), 1, 0)
        assert res.is_valid
        assert bounded_counterexample(q("/ x + ~x"), LexChain(1, 0), 8) is None

    def test_identity_trivial(self):
        assert valid_on_lex_chain(q("x / x"), 3, 1).is_valid

    def test_square_top_forces_top(self):
        # x*x ~ 1 pins the infinitesimal part: 2b = 0, so x must be top
        assert valid_on_lex_chain(q("x * x / x"), 1, 0).is_valid
        assert valid_on_lex_chain(q("x * x / x"), 2, 0).is_valid

    def test_double_not_idempotent(self):
        # x + x ~ 1 holds at co-infinitesimals (1, b), b < 0, already
        res = valid_on_lex_chain(q("x + x / x"), 1, 0)
        assert res.is_invalid
        assert res.witness["x"].a == 1 and res.witness["x"].b < 0

    def test_witnesses_reevaluate(self):
        rng = random.Random(42)
        chains = [(1, 0), (2, 0), (2, 1), (3, 1)]
        for _ in range(60):
            rule = random_rule(rng, variables=("p", "q"), max_size=8)
            n, s = chains[rng.randrange(len(chains))]
            res = valid_on_lex_chain(Quasiequation.from_rule(rule), n, s)
            if res.is_invalid:
                chain = LexChain(n, s)
                top = chain.top
                assert all(eval_formula(a, res.witness, chain) == top
                           for a in rule.premises)
                assert eval_formula(rule.conclusion, res.witness, chain) != top

    def test_metamorphic_soundness(self):
        rng = random.Random(2718)
        for _ in range(30):
            f = random_formula(rng, variables=("p", "q"), max_size=7)
            g = random_formula(rng, variables=("p", "q"), max_size=7)
            n, s = (2, 1) if rng.random() < 0.5 else (1, 0)
            # a rule whose conclusion is among its premises is valid
            assert valid_on_lex_chain(Quasiequation((g, f), f), n, s).is_valid
            # a rule concluding the top constant is valid
            one = parse_formula("1")
            assert valid_on_lex_chain(Quasiequation((f,), one), n, s).is_valid
            # an unsatisfiable premise makes any rule vacuously valid
            zero = parse_formula("0")
            assert valid_on_lex_chain(Quasiequation((zero, f), g), n, s).is_valid
            # premise order and duplication are irrelevant
            base = valid_on_lex_chain(Quasiequation((f, g), g), n, s).is_valid
            perm = valid_on_lex_chain(Quasiequation((g, f), g), n, s).is_valid
            dup = valid_on_lex_chain(Quasiequation((f, g, f), g), n, s).is_valid
            assert base == perm == dup

    def test_agreement_with_bounded_enumeration(self):
        rng = random.Random(9)
        for _ in range(40):
            rule = random_rule(rng, variables=("p", "q"), max_size=7)
            quasi = Quasiequation.from_rule(rule)
            res = valid_on_lex_chain(quasi, 2, 1)
            cex = bounded_counterexample(quasi, LexChain(2, 1), 3)
            if cex is not None:
                assert res.is_invalid


class TestAntecedentSatisfiability:
    def test_boolean(self):
        chain = FiniteChain(1)
        res = antecedent_satisfiable(q("p -> q / 0"), chain)
        assert res.is_invalid  # satisfiable, witness provided
        res = antecedent_satisfiable(q("p, ~p / 0"), chain)
        assert res.is_valid    # unsatisfiable

    def test_lex(self):
        res = antecedent_satisfiable(q("x + x / 0"), LexChain(1, 0))
        assert res.is_invalid
        assert res.witness["x"] == LexElem(1, 0)


class TestProduct:
    def test_halving_fails_in_product(self):
        factors = (FiniteChain(1), FiniteChain(2))
        res = valid_on_product(q("x + x / x * x"), factors)
        assert res.is_invalid
        prod = ProductAlgebra(factors)
        w = res.witness
        assert eval_formula(parse_formula("x + x"), w, prod) == prod.top
        assert eval_formula(parse_formula("x * x"), w, prod) != prod.top

    def test_valid_by_boolean_unsat(self):
        factors = (FiniteChain(1), FiniteChain(2))
        res = valid_on_product(q("(x or ~x) <-> 0 / 0 <-> 1"), factors)
        assert res.is_valid

    def test_identity_on_product(self):
        res = valid_on_product(q("x / x"), (FiniteChain(2), LexChain(2, 1)))
        assert res.is_valid

    def test_decomposition_matches_direct_enumeration(self):
        rng = random.Random(77)
        factors = (FiniteChain(1), FiniteChain(2))
        prod = ProductAlgebra(factors)
        top = prod.top
        elems = list(prod.elements())
        for _ in range(80):
            rule = random_rule(rng, variables=("p", "q"), max_size=7)
            quasi = Quasiequation.from_rule(rule)
            names = sorted(quasi.variables())
            direct_valid = True
            for values in itertools.product(elems, repeat=len(names)):
                assign = dict(zip(names, values))
                if all(eval_formula(a, assign, prod) == top for a in quasi.antecedents) \
                        and eval_formula(quasi.consequent, assign, prod) != top:
                    direct_valid = False
                    break
            res = valid_on_product(quasi, factors)
            assert res.is_valid == direct_valid

    def test_mixed_product_with_lex_factor(self):
        res = valid_on_product(q("x + x / x * x"), (FiniteChain(1), LexChain(2, 1)))
        assert res.is_invalid


class TestDerivability:
    def test_power_collapse_derivable(self):
        pair = ReducedPair(frozenset({4}), frozenset({3}))
        assert derivable(parse_rule("~p^2 / ~p^4"), pair)

    def test_boolean_contraction(self):
        pair = ReducedPair(frozenset({1}), frozenset())
        assert derivable(parse_rule("p / p + p"), pair)

    def test_halving_not_derivable(self):
        pair = ReducedPair(frozenset({2}), frozenset())
        res = derivable(parse_rule("p + p / p"), pair)
        assert not res
        assert res.witness == {"p": 1}
        assert res.algebra == FiniteChain(2)

    def test_q1_uses_s1_chains(self):
        pair = ReducedPair(frozenset(), frozenset({2}))
        res = derivable_q1(parse_rule("x + x / x"), pair)
        assert not res and res.algebra == LexChain(2, 1)
        # and the plain derivability check uses s = 0
        res0 = derivable(parse_rule("x + x / x"), pair)
        assert not res0 and res0.algebra == LexChain(2, 0)

    def test_antitone_in_extension(self):
        # enlarging the generating sets can only remove derivabilities
        rng = random.Random(31)
        small = ReducedPair(frozenset({2}), frozenset())
        large = ReducedPair(frozenset({2}), frozenset({3}))
        for _ in range(40):
            rule = random_rule(rng, variables=("p", "q"), max_size=6)
            if derivable(rule, large):
                assert derivable(rule, small)

    def test_equations_agree_on_s0_and_s1(self):
        # both lex chains generate the same variety, so pure equations
        # cannot tell them apart
        rng = random.Random(13)
        for _ in range(50):
            f = random_formula(rng, variables=("p", "q"), max_size=7)
            quasi = Quasiequation((), f)
            for n in (1, 2):
                v0 = valid_on_lex_chain(quasi, n, 0)
                v1 = valid_on_lex_chain(quasi, n, 1)
                assert v0.is_valid == v1.is_valid
