import random

import pytest

from conftest import random_core_formula, random_formula
from mvrules.errors import FormulaSyntaxError
from mvrules.formulas import (Iff, Imp, Join, Meet, Mult, Neg, Odot, One,
                              Oplus, Pow, Rule, Var, Zero, depth,
                              formula_to_text, is_normalized, normalize,
                              parse_formula, parse_rule, rule_to_text, size,
                              substitute, variables)

P, Q, R = Var("p"), Var("q"), Var("r")


class TestParsing:
    def test_zero(self):
        assert parse_formula("0") == Zero()

    def test_one(self):
        assert parse_formula("1") == One()

    def test_power_binds_tighter_than_neg(self):
        # x^n takes precedence over every other operation, so ~f^4 is
        # the negation of the fourth power
        f = parse_formula("~(p or ~p)^4")
        assert f == Neg(Pow(Join(P, Neg(P)), 4))

    def test_iff_of_power(self):
        assert parse_formula("(~x)^2 <-> x") == Iff(Pow(Neg(Var("x")), 2), Var("x"))

    def test_scalar(self):
        assert parse_formula("3.p") == Mult(3, P)
        assert parse_formula("2.p^3") == Mult(2, Pow(P, 3))
        assert parse_formula("2.3.p") == Mult(2, Mult(3, P))
        assert parse_formula("0.p") == Mult(0, P)

    def test_precedence_ladder(self):
        f = parse_formula("p -> q + r * ~s")
        assert f == Imp(P, Oplus(Q, Odot(R, Neg(Var("s")))))

    def test_or_and_share_level_left_assoc(self):
        assert parse_formula("p or q and r") == Meet(Join(P, Q), R)
        assert parse_formula("p and q or r") == Join(Meet(P, Q), R)

    def test_imp_right_assoc(self):
        assert parse_formula("p -> q -> r") == Imp(P, Imp(Q, R))

    def test_postfix_chain(self):
        assert parse_formula("p^2^3") == Pow(Pow(P, 2), 3)

    def test_errors_carry_position(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("p +")
        with pytest.raises(FormulaSyntaxError):
            parse_formula("2")
        with pytest.raises(FormulaSyntaxError):
            parse_formula("p ? q")
        with pytest.raises(FormulaSyntaxError):
            parse_formula("(p")
        with pytest.raises(FormulaSyntaxError):
            parse_formula("p q")

    def test_rule_parsing(self):
        rule = parse_rule("p, p -> q / q")
        assert rule == Rule((P, Imp(P, Q)), Q)
        assert parse_rule("/ q") == Rule((), Q)
        with pytest.raises(FormulaSyntaxError):
            parse_rule("p, q")
        with pytest.raises(FormulaSyntaxError):
            parse_rule("p / q / r")


class TestPrinting:
    def test_trivial(self):
        assert formula_to_text(Zero()) == "0"
        assert formula_to_text(Pow(P, 2)) == "p^2"

    def test_cc_shape(self):
        f = Neg(Pow(Join(Var("phi"), Neg(Var("phi"))), 4))
        assert formula_to_text(f) == "~(phi or ~phi)^4"

    def test_rule_text(self):
        assert rule_to_text(Rule((P, Imp(P, Q)), Q)) == "p, p -> q / q"
        assert rule_to_text(Rule((), Q)) == "/ q"

    def test_roundtrip_random(self):
        rng = random.Random(20240817)
        for _ in range(400):
            f = random_formula(rng)
            assert parse_formula(formula_to_text(f)) == f

    def test_roundtrip_on_rules(self):
        rng = random.Random(7)
        for _ in range(100):
            f = random_formula(rng)
            g = random_formula(rng)
            rule = Rule((f,), g)
            assert parse_rule(rule_to_text(rule)) == rule


class TestMetrics:
    def test_depth_example(self):
        assert depth(Neg(Oplus(P, Q))) == 2

    def test_size(self):
        assert size(Neg(Oplus(P, Q))) == 4
        assert size(Zero()) == 1

    def test_variables(self):
        assert variables(parse_formula("p + ~q * r")) == {"p", "q", "r"}
        assert variables(Zero()) == frozenset()


class TestSubstitution:
    def test_simple(self):
        assert substitute(Oplus(P, Q), {"p": Zero()}) == Oplus(Zero(), Q)
        assert substitute(Neg(P), {"p": Neg(Zero())}) == Neg(Neg(Zero()))

    def test_outside_map_unchanged(self):
        assert substitute(Oplus(P, Q), {"r": Zero()}) == Oplus(P, Q)

    def test_simultaneous(self):
        # p and q swap in one step
        f = Oplus(P, Q)
        assert substitute(f, {"p": Q, "q": P}) == Oplus(Q, P)

    def test_scheme_instantiation_delta_q3(self):
        phi, psi, chi = Var("phi"), Var("psi"), Var("chi")
        premise = Join(Iff(Pow(Neg(phi), 2), phi), Iff(psi, chi))
        inst = substitute(premise, {"phi": P, "psi": Q, "chi": Q})
        expected = Join(Iff(Pow(Neg(P), 2), P), Iff(Q, Q))
        assert inst == expected
        assert parse_formula(formula_to_text(inst)) == expected

    def test_composition_on_closed_cases(self):
        sigma = {"p": Oplus(Q, Q)}
        tau = {"q": Neg(R)}
        f = Odot(P, Q)
        lhs = substitute(substitute(f, sigma), tau)
        composed = {"p": substitute(sigma["p"], tau), "q": Neg(R)}
        assert lhs == substitute(f, composed)


class TestNormalization:
    def test_core_only(self):
        rng = random.Random(99)
        for _ in range(300):
            f = random_formula(rng)
            n = normalize(f)
            assert is_normalized(n)
            assert normalize(n) == n

    def test_core_is_fixed(self):
        rng = random.Random(5)
        for _ in range(100):
            f = random_core_formula(rng)
            assert normalize(f) == f
            # printing then reparsing is the identity, hence normalize
            assert parse_formula(formula_to_text(f)) == normalize(f)

    def test_sugar_elimination(self):
        assert normalize(One()) == Neg(Zero())
        assert normalize(Imp(P, Q)) == Oplus(Neg(P), Q)
        assert normalize(Mult(0, P)) == Zero()
        assert normalize(Pow(P, 0)) == Neg(Zero())
        assert normalize(Join(P, Q)) == Oplus(Neg(Oplus(Neg(P), Q)), Q)
