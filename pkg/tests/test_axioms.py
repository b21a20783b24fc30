from fractions import Fraction

import pytest

from mvrules.axioms import (alpha, design_target, expected_chain_spectrum,
                            expected_lex_spectrum, verify_axiomatizes)
from mvrules.formulas import Join, Neg, One, Var, variables, parse_formula
from mvrules.mcnaughton import Spectrum, term_to_pl, valid_chains, valid_lex_chains
from mvrules.pairs import ReducedPair, all_reduced_pairs

X = Var("x")


def pair(I, J=()):
    return ReducedPair(frozenset(I), frozenset(J))


class TestDesignTarget:
    def test_boolean_pair(self):
        g = design_target(pair({1}))
        assert g.at(0) == 1 and g.at(1) == 1
        for x in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
            assert g.at(x) < 1
        assert valid_chains(g) == Spectrum.of({1})
        assert valid_lex_chains(g) == Spectrum.of(set())

    def test_chang_pair(self):
        g = design_target(pair(set(), {1}))
        # identically 1 near the endpoints, dips strictly below in between
        assert g.at(Fraction(1, 8)) == 1
        assert g.at(Fraction(7, 8)) == 1
        assert g.at(Fraction(1, 2)) < 1
        assert valid_lex_chains(g) == Spectrum.of({1})
        assert valid_chains(g) == Spectrum.of({1})

    def test_two_chain_pair(self):
        g = design_target(pair({2}))
        ones = [x for x in (Fraction(t, 8) for t in range(9)) if g.at(x) == 1]
        assert ones == [Fraction(0), Fraction(1, 2), Fraction(1)]
        assert valid_chains(g) == Spectrum.of({1, 2})

    def test_4_3_spectra(self):
        g = design_target(pair({4}, {3}))
        assert valid_chains(g) == Spectrum.of({1, 2, 3, 4})
        assert valid_lex_chains(g) == Spectrum.of({1, 3})


class TestVerify:
    def test_excluded_middle_axiomatizes_boolean(self):
        assert verify_axiomatizes(Join(X, Neg(X)), pair({1}))

    def test_excluded_middle_fails_for_two_chain(self):
        assert not verify_axiomatizes(Join(X, Neg(X)), pair({2}))

    def test_top_never_axiomatizes(self):
        assert not verify_axiomatizes(One(), pair({1}))
        assert not verify_axiomatizes(parse_formula("~0"), pair({2}, {3}))

    def test_multivariable_rejected(self):
        with pytest.raises(ValueError):
            verify_axiomatizes(parse_formula("x + y"), pair({1}))


class TestAlpha:
    def test_boolean_alpha_matches_excluded_middle_function(self):
        t = alpha(pair({1}))
        assert term_to_pl(t) == design_target(pair({1}))
        assert verify_axiomatizes(t, pair({1}))

    def test_4_3(self):
        t = alpha(pair({4}, {3}))
        g = term_to_pl(t)
        assert valid_chains(g) == Spectrum.of({1, 2, 3, 4})
        assert valid_lex_chains(g) == Spectrum.of({1, 3})

    def test_chang(self):
        t = alpha(pair(set(), {1}))
        assert verify_axiomatizes(t, pair(set(), {1}))

    def test_variable_renaming(self):
        t = alpha(pair({1}), var="gamma")
        assert variables(t) == {"gamma"}

    def test_all_pairs_up_to_three(self):
        for p in all_reduced_pairs(3):
            t = alpha(p)
            assert verify_axiomatizes(t, p), p


def test_expected_spectra():
    p = pair({4}, {3})
    assert expected_chain_spectrum(p) == {1, 2, 4, 3}
    assert expected_lex_spectrum(p) == {1, 3}
    assert expected_lex_spectrum(pair({2})) == frozenset()
