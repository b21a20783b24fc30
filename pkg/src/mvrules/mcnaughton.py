"""Exact one-variable piecewise-linear calculus.

PLFunc is a continuous [0,1] -> [0,1] function, linear between rational
breakpoints, with integer slope and intercept on every piece (a one-variable
McNaughton function).  `term_to_pl` evaluates a one-variable term to its
function; `synthesize` inverts that exactly.

Synthesis works over a unimodular (Farey) partition containing the target's
breakpoints: the function is the truncated integer combination of the
Schauder hats of the partition, every hat is a meet of two clamped ramps,
and a clamped ramp med(0, m*x - k, 1) is built recursively: composites
factor through med-ramp composition, and a prime slope p splits along the
Stern-Brocot parents e/f < k/p < e'/f' into a clamped difference plus a
tent, both with slopes f and f' < p.
"""

from __future__ import annotations

import sys
from bisect import bisect_left, insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import VerificationError
from .formulas import (Formula, Iff, Imp, Join, Meet, Mult, Neg, Odot, One,
                       Oplus, Pow, Var, Zero, substitute, variables)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_X = Var("x")

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PLFunc:
    """Canonical breakpoint form: 0 = x0 < ... < xk = 1, values in [0,1],
    integer slope and intercept on every piece, no collinear interior node."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2 or pts[0][0] != 0 or pts[-1][0] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x2 <= x1:
                raise ValueError("breakpoints must be strictly increasing")
            slope = (y2 - y1) / (x2 - x1)
            if slope.denominator != 1:
                raise ValueError(f"piece slope {slope} is not an integer")
            intercept = y1 - slope * x1
            if intercept.denominator != 1:
                raise ValueError(f"piece intercept {intercept} is not an integer")
        for y in (y for _, y in pts):
            if not 0 <= y <= 1:
                raise ValueError("values must lie in [0,1]")
        for (x1, y1), (x2, y2), (x3, y3) in zip(pts, pts[1:], pts[2:]):
            if (y2 - y1) * (x3 - x2) == (y3 - y2) * (x2 - x1):
                raise ValueError("canonical form has no collinear interior node")

    @classmethod
    def from_points(cls, raw: Iterable[Point]) -> "PLFunc":
        return cls(_canonical(raw))

    @classmethod
    def constant(cls, c) -> "PLFunc":
        c = Fraction(c)
        return cls(((Fraction(0), c), (Fraction(1), c)))

    @classmethod
    def identity(cls) -> "PLFunc":
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    def at(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("argument outside [0,1]")
        xs = [p[0] for p in self.points]
        i = bisect_left(xs, x)
        if i < len(xs) and xs[i] == x:
            return self.points[i][1]
        (x1, y1), (x2, y2) = self.points[i - 1], self.points[i]
        return y1 + (y2 - y1) * (x - x1) / (x2 - x1)

    def is_constant(self, c=None) -> bool:
        ys = {y for _, y in self.points}
        if len(ys) != 1:
            return False
        return True if c is None else ys == {Fraction(c)}

    def breakpoint_xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.points)

    def to_json_array(self):
        return [[p[0].numerator, p[0].denominator, p[1].numerator, p[1].denominator]
                for p in self.points]

    @classmethod
    def from_json_array(cls, data) -> "PLFunc":
        return cls.from_points(
            (Fraction(a, b), Fraction(c, d)) for a, b, c, d in data)


def _canonical(raw: Iterable[Point]) -> tuple[Point, ...]:
    pts = sorted({(Fraction(x), Fraction(y)) for x, y in raw})
    out: list[Point] = []
    for p in pts:
        while len(out) >= 2:
            (x1, y1), (x2, y2) = out[-2], out[-1]
            if (y2 - y1) * (p[0] - x2) == (p[1] - y2) * (x2 - x1):
                out.pop()
            else:
                break
        out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# raw piecewise-linear combinators (values may leave [0,1] in between)
# ---------------------------------------------------------------------------

def _value_at(pts: Sequence[Point], x: Fraction) -> Fraction:
    xs = [p[0] for p in pts]
    i = bisect_left(xs, x)
    if i < len(xs) and xs[i] == x:
        return pts[i][1]
    (x1, y1), (x2, y2) = pts[i - 1], pts[i]
    return y1 + (y2 - y1) * (x - x1) / (x2 - x1)


def _merge_grid(f: Sequence[Point], g: Sequence[Point]) -> list[Fraction]:
    return sorted({x for x, _ in f} | {x for x, _ in g})


def _zip2(f, g, op) -> list[Point]:
    return [(x, op(_value_at(f, x), _value_at(g, x))) for x in _merge_grid(f, g)]


def _add(f, g):
    return _zip2(f, g, lambda a, b: a + b)


def _scale(f, k):
    return [(x, k * y) for x, y in f]


def _shift(f, c):
    return [(x, y + c) for x, y in f]


def _neg(f):
    return [(x, -y) for x, y in f]


def _insert_crossings(f: Sequence[Point], level: Fraction) -> list[Point]:
    out: list[Point] = [f[0]]
    for (x1, y1), (x2, y2) in zip(f, f[1:]):
        if (y1 - level) * (y2 - level) < 0:
            xc = x1 + (level - y1) * (x2 - x1) / (y2 - y1)
            out.append((xc, level))
        out.append((x2, y2))
    return out


def _clip_above(f, level=Fraction(1)):
    return [(x, min(y, level)) for x, y in _insert_crossings(f, Fraction(level))]


def _clip_below(f, level=Fraction(0)):
    return [(x, max(y, level)) for x, y in _insert_crossings(f, Fraction(level))]


def _pointwise_max(f, g):
    d = _zip2(f, g, lambda a, b: a - b)
    grid = [x for x, _ in _insert_crossings(d, Fraction(0))]
    return [(x, max(_value_at(f, x), _value_at(g, x))) for x in grid]


def _pointwise_min(f, g):
    d = _zip2(f, g, lambda a, b: a - b)
    grid = [x for x, _ in _insert_crossings(d, Fraction(0))]
    return [(x, min(_value_at(f, x), _value_at(g, x))) for x in grid]


# ---------------------------------------------------------------------------
# term -> function
# ---------------------------------------------------------------------------

def term_to_pl(f: Formula) -> PLFunc:
    """The function on [0,1] computed by a term in at most one variable."""
    names = variables(f)
    if len(names) > 1:
        raise ValueError(f"term_to_pl needs a one-variable term, got {sorted(names)}")
    memo: dict[int, list[Point]] = {}

    def go(g: Formula) -> list[Point]:
        got = memo.get(id(g))
        if got is not None:
            return got
        if isinstance(g, Zero):
            out = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))]
        elif isinstance(g, One):
            out = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))]
        elif isinstance(g, Var):
            out = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))]
        elif isinstance(g, Neg):
            out = _shift(_neg(go(g.sub)), 1)
        elif isinstance(g, Oplus):
            out = _clip_above(_add(go(g.left), go(g.right)))
        elif isinstance(g, Odot):
            out = _clip_below(_shift(_add(go(g.left), go(g.right)), -1))
        elif isinstance(g, Imp):
            out = _clip_above(_shift(_add(_neg(go(g.left)), go(g.right)), 1))
        elif isinstance(g, Join):
            out = _pointwise_max(go(g.left), go(g.right))
        elif isinstance(g, Meet):
            out = _pointwise_min(go(g.left), go(g.right))
        elif isinstance(g, Iff):
            a, b = go(g.left), go(g.right)
            fwd = _clip_above(_shift(_add(_neg(a), b), 1))
            bwd = _clip_above(_shift(_add(_neg(b), a), 1))
            out = _pointwise_min(fwd, bwd)
        elif isinstance(g, Mult):
            out = _clip_above(_scale(go(g.sub), g.count))
        elif isinstance(g, Pow):
            out = _clip_below(_shift(_scale(go(g.sub), g.exp), -(g.exp - 1)))
        else:
            raise TypeError(f"unknown formula node {g!r}")
        out = list(_canonical(out))
        memo[id(g)] = out
        return out

    return PLFunc(_canonical(go(f)))


# ---------------------------------------------------------------------------
# clamped ramps: terms for med(0, m*x - k, 1)
# ---------------------------------------------------------------------------

_RAMP_MEMO: dict[tuple[int, int], Formula] = {}


def _parents(k: int, m: int) -> tuple[int, int, int, int]:
    """Stern-Brocot parents e/f < k/m < e'/f' of a reduced fraction:
    k*f - m*e = 1 and m*e' - k*f' = 1, with f + f' = m and e + e' = k."""
    f = pow(k, -1, m)
    e = (k * f - 1) // m
    return e, f, k - e, m - f


def ramp_term(m: int, k: int) -> Formula:
    """A term whose function is med(0, m*x - k, 1), for any m >= 1."""
    if m < 1:
        raise ValueError("slope must be positive")
    if k >= m:
        return Zero()
    if k < 0:
        return One()
    got = _RAMP_MEMO.get((m, k))
    if got is not None:
        return got
    if k == 0:
        out: Formula = _X if m == 1 else Mult(m, _X)
    elif k == m - 1:
        out = Pow(_X, m)
    else:
        a = _smallest_prime_factor(m)
        if a != m:
            # med-ramp composition: R_{a,k'} o R_{b,k''} = R_{ab, a*k''+k'}
            b = m // a
            out = substitute(ramp_term(a, k % a), {"x": ramp_term(b, k // a)})
        else:
            e, f, e2, f2 = _parents(k, m)
            rise = ramp_term(f, e)
            fall = _falling_ramp_term(f2, e2)
            clamped = Odot(rise, Neg(Meet(rise, fall)))
            tent = Meet(ramp_term(f2, e2), _falling_ramp_term(f, e + 1))
            out = Oplus(clamped, tent)
    _RAMP_MEMO[(m, k)] = out
    return out


def _falling_ramp_term(b: int, a: int) -> Formula:
    """A term for med(0, -b*x + a, 1): the rising ramp composed with ~x."""
    return substitute(ramp_term(b, b - a), {"x": Neg(_X)})


def _smallest_prime_factor(m: int) -> int:
    d = 2
    while d * d <= m:
        if m % d == 0:
            return d
        d += 1
    return m


# ---------------------------------------------------------------------------
# unimodular partitions, hats, synthesis
# ---------------------------------------------------------------------------

def unimodular_partition(targets: Iterable[Fraction]) -> list[Fraction]:
    """The partition grown from {0, 1} by Stern-Brocot mediant insertion
    until it contains every target; consecutive nodes a/b < c/d satisfy
    c*b - a*d = 1."""
    nodes = [Fraction(0), Fraction(1)]
    have = set(nodes)
    for t in sorted(set(Fraction(t) for t in targets)):
        if not 0 <= t <= 1:
            raise ValueError("targets must lie in [0,1]")
        if t in have:
            continue
        i = bisect_left(nodes, t)
        u, v = nodes[i - 1], nodes[i]
        while True:
            w = Fraction(u.numerator + v.numerator, u.denominator + v.denominator)
            insort(nodes, w)
            have.add(w)
            if w == t:
                break
            if t < w:
                v = w
            else:
                u = w
    return nodes


def hat_term(nodes: Sequence[Fraction], i: int) -> Formula:
    """The Schauder hat of node i: peak 1/denominator at the node, zero at
    the adjacent nodes, linear in between."""
    v = nodes[i]
    if i > 0 and i < len(nodes) - 1:
        left, right = nodes[i - 1], nodes[i + 1]
        rise = ramp_term(left.denominator, left.numerator)
        fall = _falling_ramp_term(right.denominator, right.numerator)
        return Meet(rise, fall)
    if i == 0:
        right = nodes[1]
        return _falling_ramp_term(right.denominator, right.numerator)
    left = nodes[-2]
    return ramp_term(left.denominator, left.numerator)


def hat_pl(nodes: Sequence[Fraction], i: int) -> PLFunc:
    """The hat of node i directly as a PLFunc (independent of hat_term)."""
    raw = {Fraction(0): Fraction(0), Fraction(1): Fraction(0)}
    if i > 0:
        raw[nodes[i - 1]] = Fraction(0)
    if i < len(nodes) - 1:
        raw[nodes[i + 1]] = Fraction(0)
    raw[nodes[i]] = Fraction(1, nodes[i].denominator)
    return PLFunc.from_points(sorted(raw.items()))


def _balanced_oplus(terms: Sequence[Formula]) -> Formula:
    if not terms:
        return Zero()
    layer = list(terms)
    while len(layer) > 1:
        nxt = []
        for j in range(0, len(layer) - 1, 2):
            nxt.append(Oplus(layer[j], layer[j + 1]))
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def synthesize(g: PLFunc) -> Formula:
    """A one-variable term t with term_to_pl(t) = g exactly.

    The hat coefficients are the values of g at the partition nodes scaled
    by the node denominators; since the pointwise sum equals g <= 1, the
    truncated sum never truncates and reproduces g.
    """
    if g.is_constant(1):
        return One()
    if g.is_constant(0):
        return Zero()
    interior = [x for x in g.breakpoint_xs() if 0 < x < 1]
    nodes = unimodular_partition(interior)
    terms: list[Formula] = []
    for i, node in enumerate(nodes):
        c = g.at(node) * node.denominator
        if c.denominator != 1:
            raise VerificationError(
                f"non-integer hat coefficient {c} at node {node}")
        c = c.numerator
        if c == 0:
            continue
        hat = hat_term(nodes, i)
        terms.append(hat if c == 1 else Mult(c, hat))
    term = _balanced_oplus(terms)
    if term_to_pl(term) != g:
        raise VerificationError("synthesized term does not reproduce its target")
    return term


# ---------------------------------------------------------------------------
# validity spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Finite description of a set of chain sizes: either every k, or an
    explicit finite set."""

    all_k: bool
    ks: frozenset[int]

    @classmethod
    def every(cls) -> "Spectrum":
        return cls(True, frozenset())

    @classmethod
    def of(cls, ks) -> "Spectrum":
        return cls(False, frozenset(ks))

    def __contains__(self, k: int) -> bool:
        return True if self.all_k else k in self.ks

    def __str__(self):
        return "all k" if self.all_k else "{" + ",".join(map(str, sorted(self.ks))) + "}"


def _one_regions(g: PLFunc) -> list[tuple[Fraction, Fraction]]:
    """Maximal closed intervals (possibly degenerate) where g equals 1."""
    regions: list[tuple[Fraction, Fraction]] = []

    def push(lo, hi):
        if regions and lo <= regions[-1][1]:
            regions[-1] = (regions[-1][0], max(regions[-1][1], hi))
        else:
            regions.append((lo, hi))

    pts = g.points
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        if y1 == 1 and y2 == 1:
            push(x1, x2)
        elif y1 == 1:
            push(x1, x1)
        elif y2 == 1:
            push(x2, x2)
    return regions


def _gaps(g: PLFunc) -> list[tuple[Fraction, Fraction]]:
    """Maximal open intervals where g < 1 (complement of the one-regions)."""
    regions = _one_regions(g)
    gaps = []
    prev = Fraction(0)
    for lo, hi in regions:
        if lo > prev:
            gaps.append((prev, lo))
        prev = hi
    if prev < 1:
        gaps.append((prev, Fraction(1)))
    if not regions:
        return [(Fraction(0), Fraction(1))]
    return gaps


def valid_chains(g: PLFunc) -> Spectrum:
    """{k : g(t/k) = 1 for all 0 <= t <= k}.

    Any gap (c, d) where g < 1 bounds the candidates by ceil(1/(d-c));
    each candidate is then checked exactly.
    """
    gaps = _gaps(g)
    if not gaps:
        return Spectrum.every()
    width = max(d - c for c, d in gaps)
    bound = -((-width.denominator) // width.numerator)  # ceil(1/width)
    good = []
    for k in range(1, bound + 1):
        if all(g.at(Fraction(t, k)) == 1 for t in range(k + 1)):
            good.append(k)
    return Spectrum.of(good)


def valid_lex_chains(g: PLFunc) -> Spectrum:
    """{k : the equation g ~ 1 is valid in the lex chain over k with s=0}.

    Validity there needs g identically 1 on a neighborhood of every t/k:
    two-sided at interior points, right at 0 and left at 1.
    """
    gaps = _gaps(g)
    if not gaps:
        return Spectrum.every()
    plateaus = [(lo, hi) for lo, hi in _one_regions(g) if lo < hi]
    width = max(d - c for c, d in gaps)
    bound = -((-width.denominator) // width.numerator)

    def point_ok(t, k):
        x = Fraction(t, k)
        for lo, hi in plateaus:
            if t == 0 and lo == 0 and hi > 0:
                return True
            if t == k and hi == 1 and lo < 1:
                return True
            if lo < x < hi:
                return True
        return False

    good = [k for k in range(1, bound + 1)
            if all(point_ok(t, k) for t in range(k + 1))]
    return Spectrum.of(good)
