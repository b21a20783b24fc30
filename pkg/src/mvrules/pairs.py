"""Reduced pairs (I, J): divisibility-antichain presentations of the proper
subvarieties, their reduction, containment rules, lattice order, divisor
data and the critical exponent."""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class ReducedPair:
    """Two disjoint finite sets of positive integers, not both empty, with
    no element of I dividing another element of I u J and no element of J
    properly dividing another element of J."""

    I: frozenset[int]
    J: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "I", frozenset(self.I))
        object.__setattr__(self, "J", frozenset(self.J))
        if not self.I and not self.J:
            raise ValueError("I and J must not both be empty")
        if any(k < 1 for k in self.I | self.J):
            raise ValueError("pair entries must be positive integers")
        if self.I & self.J:
            raise ValueError("I and J must be disjoint")
        for n in self.I:
            if any(n != k and k % n == 0 for k in self.I | self.J):
                raise ValueError(f"not reduced: {n} in I divides another element")
        for m in self.J:
            if any(m != k and k % m == 0 for k in self.J):
                raise ValueError(f"not reduced: {m} in J divides another element of J")

    def __str__(self):
        fmt = lambda s: "{" + ",".join(map(str, sorted(s))) + "}"
        return f"({fmt(self.I)},{fmt(self.J)})"


def reduce_pair(I, J) -> ReducedPair:
    """Drop every i in I dividing another element of I u J and every j in J
    properly dividing another element of J; the result presents the same
    variety (L_d sits inside L_k when d | k, and L_d, L_d^w lie in the
    variety of L_k^w when d | k)."""
    I, J = set(I), set(J)
    if not I and not J:
        raise ValueError("I and J must not both be empty")
    keep_I = {i for i in I
              if not any(k % i == 0 for k in (I - {i}) | J)}
    keep_J = {j for j in J
              if not any(k % j == 0 for k in J - {j})}
    return ReducedPair(frozenset(keep_I), frozenset(keep_J))


def is_reduced(I, J) -> bool:
    try:
        ReducedPair(frozenset(I), frozenset(J))
    except ValueError:
        return False
    return True


def contains_chain(pair: ReducedPair, k: int) -> bool:
    """L_k lies in V_{I,J} iff k divides some element of I u J."""
    return any(e % k == 0 for e in pair.I | pair.J)


def contains_lex_chain(pair: ReducedPair, k: int) -> bool:
    """L_k^w lies in V_{I,J} iff k divides some element of J."""
    return any(e % k == 0 for e in pair.J)


def leq(pair: ReducedPair, other: ReducedPair) -> bool:
    """V_{I,J} is a subvariety of the other iff every generator of the
    former is contained in the latter."""
    return (all(contains_chain(other, i) for i in pair.I)
            and all(contains_lex_chain(other, j) for j in pair.J))


def critical_n(pair: ReducedPair) -> int:
    """n = max{max I, max J + 1}, with max of an empty set read as 0."""
    return max(max(pair.I, default=0), max(pair.J, default=0) + 1)


def divisors(k: int) -> set[int]:
    return {d for d in range(1, k + 1) if k % d == 0}


def _primes(values) -> list[int]:
    def is_prime(p):
        return p > 1 and all(p % d for d in range(2, int(p ** 0.5) + 1))
    return sorted(v for v in values if is_prime(v))


@dataclass(frozen=True)
class DivisorData:
    div_I: frozenset[int]
    div_J: frozenset[int]
    primes_J_not_I: tuple[int, ...]  # primes in Div(J) \ Div(I)
    primes_I: tuple[int, ...]        # primes in Div(I)
    I_q: dict                        # prime q -> {n in I : q | n}


def div_sets(pair: ReducedPair) -> DivisorData:
    div_I = set().union(*(divisors(i) for i in pair.I)) if pair.I else set()
    div_J = set().union(*(divisors(j) for j in pair.J)) if pair.J else set()
    primes_q = _primes(div_J - div_I)
    primes_u = _primes(div_I)
    I_q = {q: frozenset(n for n in pair.I if n % q == 0) for q in primes_u}
    return DivisorData(frozenset(div_I), frozenset(div_J),
                       tuple(primes_q), tuple(primes_u), I_q)


def all_reduced_pairs(max_element: int):
    """Every reduced pair with both components inside {1..max_element}."""
    universe = list(range(1, max_element + 1))
    out = []
    for r in range(len(universe) + 1):
        for I in itertools.combinations(universe, r):
            rest = [x for x in universe if x not in I]
            for t in range(len(rest) + 1):
                for J in itertools.combinations(rest, t):
                    if not I and not J:
                        continue
                    if is_reduced(I, J):
                        out.append(ReducedPair(frozenset(I), frozenset(J)))
    return out
