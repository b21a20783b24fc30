"""Exact arithmetic and formula evaluation in the concrete chains and products.

FiniteChain(n) is the (n+1)-element chain on {0,...,n} (k stands for k/n).
LexChain(n, s) is the interval algebra of the lexicographic product Z x_lex Z
with unit (n, s); LexChain(n, 0) is the chain with infinitesimals around each
point of FiniteChain(n).  Elements of a lex chain are integer pairs (a, b);
ProductAlgebra elements are tuples of factor elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple

from .errors import CarrierError, UnboundVariableError
from .formulas import (Formula, Iff, Imp, Join, Meet, Mult, Neg, Odot, One,
                       Oplus, Pow, Var, Zero)


class LexElem(NamedTuple):
    a: int
    b: int

    def __str__(self):
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class FiniteChain:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("chain parameter n must be >= 1")

    @property
    def zero(self):
        return 0

    @property
    def top(self):
        return self.n

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x <= self.n

    def elements(self) -> Iterator[int]:
        return iter(range(self.n + 1))

    def oplus(self, x, y):
        return min(self.n, x + y)

    def neg(self, x):
        return self.n - x

    def format_element(self, x) -> str:
        return f"{x}/{self.n}"

    def parse_element(self, text: str):
        m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
        if m is None or int(m.group(2)) != self.n:
            raise CarrierError(f"{text!r} is not an element of {self}")
        x = int(m.group(1))
        if not self.contains(x):
            raise CarrierError(f"{text!r} is outside {self}")
        return x

    def __str__(self):
        return f"L({self.n})"


@dataclass(frozen=True)
class LexChain:
    """Interval [ (0,0), (n,s) ] of Z x_lex Z.

    s may be any integer >= 0 (not just s < n): the s = 1 chains are needed
    for every n including n = 1, and the interval construction is well
    defined whenever (n, s) > (0, 0).
    """

    n: int
    s: int = 0

    def __post_init__(self):
        if self.n < 1 or self.s < 0:
            raise ValueError("need n >= 1 and s >= 0")

    @property
    def zero(self):
        return LexElem(0, 0)

    @property
    def top(self):
        return LexElem(self.n, self.s)

    def contains(self, x) -> bool:
        if not (isinstance(x, tuple) and len(x) == 2):
            return False
        a, b = x
        if not (0 <= a <= self.n):
            return False
        if a == 0 and b < 0:
            return False
        if a == self.n and b > self.s:
            return False
        return True

    def elements_bounded(self, bound: int) -> Iterator[LexElem]:
        """Carrier elements with |b| <= bound; an exhaustive finite slice."""
        for a in range(self.n + 1):
            lo = 0 if a == 0 else -bound
            hi = self.s if a == self.n else bound
            for b in range(lo, min(hi, bound) + 1):
                yield LexElem(a, b)

    def oplus(self, x, y):
        raw = (x[0] + y[0], x[1] + y[1])
        t = (self.n, self.s)
        return LexElem(*min(t, raw))

    def neg(self, x):
        return LexElem(self.n - x[0], self.s - x[1])

    def format_element(self, x) -> str:
        return f"({x[0]},{x[1]})@Lex({self.n},{self.s})"

    def parse_element(self, text: str):
        m = re.fullmatch(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*@\s*Lex\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*", text)
        if m is None or int(m.group(3)) != self.n or int(m.group(4)) != self.s:
            raise CarrierError(f"{text!r} is not an element of {self}")
        x = LexElem(int(m.group(1)), int(m.group(2)))
        if not self.contains(x):
            raise CarrierError(f"{text!r} is outside {self}")
        return x

    def __str__(self):
        return f"Lex({self.n},{self.s})"


@dataclass(frozen=True)
class ProductAlgebra:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product needs at least one factor")

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def top(self):
        return tuple(f.top for f in self.factors)

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(f.contains(v) for f, v in zip(self.factors, x)))

    def elements(self) -> Iterator[tuple]:
        import itertools
        return itertools.product(*[f.elements() for f in self.factors])

    def oplus(self, x, y):
        return tuple(f.oplus(a, b) for f, a, b in zip(self.factors, x, y))

    def neg(self, x):
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    def format_element(self, x) -> str:
        return "[" + ", ".join(f.format_element(v) for f, v in zip(self.factors, x)) + "]"

    def __str__(self):
        return "x".join(str(f) for f in self.factors)


# ---------------------------------------------------------------------------
# derived operations and evaluation
# ---------------------------------------------------------------------------

def odot(alg, x, y):
    return alg.neg(alg.oplus(alg.neg(x), alg.neg(y)))


def imp(alg, x, y):
    return alg.oplus(alg.neg(x), y)


def join(alg, x, y):
    return alg.oplus(alg.neg(alg.oplus(alg.neg(x), y)), y)


def meet(alg, x, y):
    return alg.neg(join(alg, alg.neg(x), alg.neg(y)))


def leq(alg, x, y) -> bool:
    """Natural order: x <= y iff x -> y evaluates to the top element."""
    return imp(alg, x, y) == alg.top


def mult(alg, k: int, x):
    acc = alg.zero
    for _ in range(k):
        acc = alg.oplus(x, acc)
        if acc == alg.top:
            break
    return acc


def power(alg, x, k: int):
    acc = alg.neg(alg.zero)
    for _ in range(k):
        acc = odot(alg, x, acc)
        if acc == alg.zero:
            break
    return acc


def eval_formula(f: Formula, assignment: Mapping[str, object], alg, *, check=True):
    """Value of f under the assignment, by structural recursion.

    Raises UnboundVariableError for missing variables and (with check=True)
    CarrierError for values outside the carrier.
    """
    if check:
        for name, value in assignment.items():
            if not alg.contains(value):
                raise CarrierError(f"{value!r} is not in the carrier of {alg}")

    def go(g):
        if isinstance(g, Var):
            try:
                return assignment[g.name]
            except KeyError:
                raise UnboundVariableError(f"variable {g.name!r} has no value") from None
        if isinstance(g, Zero):
            return alg.zero
        if isinstance(g, One):
            return alg.neg(alg.zero)
        if isinstance(g, Neg):
            return alg.neg(go(g.sub))
        if isinstance(g, Oplus):
            return alg.oplus(go(g.left), go(g.right))
        if isinstance(g, Odot):
            return odot(alg, go(g.left), go(g.right))
        if isinstance(g, Imp):
            return imp(alg, go(g.left), go(g.right))
        if isinstance(g, Join):
            return join(alg, go(g.left), go(g.right))
        if isinstance(g, Meet):
            return meet(alg, go(g.left), go(g.right))
        if isinstance(g, Iff):
            a, b = go(g.left), go(g.right)
            return meet(alg, imp(alg, a, b), imp(alg, b, a))
        if isinstance(g, Mult):
            return mult(alg, g.count, go(g.sub))
        if isinstance(g, Pow):
            return power(alg, go(g.sub), g.exp)
        raise TypeError(f"unknown formula node {g!r}")

    return go(f)


# ---------------------------------------------------------------------------
# radical / co-radical
# ---------------------------------------------------------------------------

def coradical_member(x, chain) -> bool:
    """True iff x^k != 0 for every k > 0.

    In a finite chain only the top element qualifies; in LexChain(n, s) the
    elements (n, b) qualify, since (n, b)^k = (n, kb - (k-1)s) never reaches
    (0, 0), while any element with first coordinate < n has a power equal
    to 0.
    """
    if isinstance(chain, FiniteChain):
        return x == chain.n
    if isinstance(chain, LexChain):
        return x[0] == chain.n
    raise TypeError("coradical_member expects a chain")


def radical_ideal(chain):
    """Membership predicate of the unique maximal ideal of the chain.

    FiniteChain: {0}.  LexChain(n, s): the infinitesimals {(0, b) : b >= 0}.
    """
    if isinstance(chain, FiniteChain):
        return lambda x: x == 0
    if isinstance(chain, LexChain):
        return lambda x: x[0] == 0 and x[1] >= 0
    raise TypeError("radical_ideal expects a chain")


def parse_algebra(text: str):
    """Parse 'L(n)' or 'Lex(n,s)' into a chain object."""
    m = re.fullmatch(r"\s*L\(\s*(\d+)\s*\)\s*", text)
    if m:
        return FiniteChain(int(m.group(1)))
    m = re.fullmatch(r"\s*Lex\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*", text)
    if m:
        return LexChain(int(m.group(1)), int(m.group(2)))
    raise ValueError(f"unknown algebra spec {text!r} (expected L(n) or Lex(n,s))")
