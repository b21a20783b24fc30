"""Construct and verify a one-variable axiom for each proper subvariety.

The target function equals 1 exactly on a small closed plateau around every
multiple of 1/j (j in J; one-sided at 0 and 1) and on the isolated points
t/i (i in I), and dips to 0 between; the divisibility containment rules of
the subvariety classification say the validity spectra of such an equation
pin the variety exactly, so the synthesized term is verified per instance
against those spectra.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import VerificationError
from .formulas import Formula, Var, substitute
from .mcnaughton import (PLFunc, synthesize, term_to_pl, valid_chains,
                         valid_lex_chains)
from .pairs import ReducedPair, divisors


def expected_chain_spectrum(pair: ReducedPair) -> frozenset[int]:
    """{k : the finite chain of size k lies in the variety} = divisors of
    elements of I u J."""
    out: set[int] = set()
    for e in pair.I | pair.J:
        out |= divisors(e)
    return frozenset(out)


def expected_lex_spectrum(pair: ReducedPair) -> frozenset[int]:
    """{k : the k-th lex chain lies in the variety} = divisors of J."""
    out: set[int] = set()
    for e in pair.J:
        out |= divisors(e)
    return frozenset(out)


def design_target(pair: ReducedPair) -> PLFunc:
    """The axiom's function: plateau radius 1/(4*lcm(I u J)), dip slope
    4*lcm, so all breakpoints sit on the (1/4L)-grid with values in {0,1}
    and the McNaughton invariants hold by construction."""
    members = sorted(pair.I | pair.J)
    big_l = lcm(*members) if len(members) > 1 else members[0]
    r = Fraction(1, 4 * big_l)

    plateau_centers = {Fraction(t, j) for j in pair.J for t in range(j + 1)}
    touch_points = {Fraction(t, i) for i in pair.I for t in range(i + 1)}
    touch_points -= plateau_centers

    regions = []
    for c in sorted(plateau_centers | touch_points):
        if c in plateau_centers:
            regions.append((max(Fraction(0), c - r), min(Fraction(1), c + r)))
        else:
            regions.append((c, c))

    points: list[tuple[Fraction, Fraction]] = []
    for idx, (lo, hi) in enumerate(regions):
        points.append((lo, Fraction(1)))
        if hi != lo:
            points.append((hi, Fraction(1)))
        if idx + 1 < len(regions):
            nxt = regions[idx + 1][0]
            z1, z2 = hi + r, nxt - r
            if z1 > z2:
                raise VerificationError("plateau radius too large for anchor spacing")
            points.append((z1, Fraction(0)))
            if z2 != z1:
                points.append((z2, Fraction(0)))
    return PLFunc.from_points(points)


def verify_axiomatizes(term: Formula, pair: ReducedPair) -> bool:
    """Check that the equation term ~ 1 has exactly the spectra the pair
    dictates: valid on the finite chain of size k iff k divides an element
    of I u J, and on the k-th lex chain iff k divides an element of J."""
    g = term_to_pl(term)
    chain_spec = valid_chains(g)
    lex_spec = valid_lex_chains(g)
    if chain_spec.all_k or lex_spec.all_k:
        return False
    return (chain_spec.ks == expected_chain_spectrum(pair)
            and lex_spec.ks == expected_lex_spectrum(pair))


def alpha(pair: ReducedPair, var: str = "x") -> Formula:
    """A verified one-variable axiom for the subvariety of the pair."""
    term = synthesize(design_target(pair))
    if not verify_axiomatizes(term, pair):
        raise VerificationError(f"synthesized axiom for {pair} fails its spectrum check")
    if var != "x":
        term = substitute(term, {"x": Var(var)})
    return term
