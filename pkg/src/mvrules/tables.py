"""Operation-table MV-algebras: ideal enumeration, bipartiteness, quotients,
subalgebras, products and desk-scale membership checks.

In a finite MV-algebra the ideals are exactly the downsets of the
idempotent elements, so ideal enumeration is linear in the carrier; the
classification flags are computed from the quotients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .chains import ProductAlgebra
from .errors import ResourceGuardError

SIZE_GUARD = 64


@dataclass(frozen=True)
class TableAlgebra:
    """Finite MV-algebra given by tables; carrier is range(size), zero is 0.

    MV1-MV6 are checked exhaustively on construction.
    """

    size: int
    oplus_table: tuple
    neg_table: tuple

    def __post_init__(self):
        object.__setattr__(self, "oplus_table",
                           tuple(tuple(row) for row in self.oplus_table))
        object.__setattr__(self, "neg_table", tuple(self.neg_table))
        n, plus, neg = self.size, self.oplus_table, self.neg_table
        if len(plus) != n or any(len(row) != n for row in plus) or len(neg) != n:
            raise ValueError("table dimensions do not match the carrier size")
        rng = range(n)
        if any(plus[x][y] not in rng for x in rng for y in rng):
            raise ValueError("oplus table leaves the carrier")
        if any(neg[x] not in rng for x in rng):
            raise ValueError("neg table leaves the carrier")
        one = neg[0]
        for x in rng:
            if plus[x][0] != x:
                raise ValueError("MV3 fails")
            if neg[neg[x]] != x:
                raise ValueError("MV4 fails")
            if plus[x][one] != one:
                raise ValueError("MV5 fails")
            for y in rng:
                if plus[x][y] != plus[y][x]:
                    raise ValueError("MV2 fails")
                if plus[neg[plus[neg[x]][y]]][y] != plus[neg[plus[neg[y]][x]]][x]:
                    raise ValueError("MV6 fails")
                for z in rng:
                    if plus[plus[x][y]][z] != plus[x][plus[y][z]]:
                        raise ValueError("MV1 fails")

    # -- carrier protocol shared with the chain algebras --
    @property
    def zero(self):
        return 0

    @property
    def top(self):
        return self.neg_table[0]

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.size

    def elements(self):
        return iter(range(self.size))

    def oplus(self, x, y):
        return self.oplus_table[x][y]

    def neg(self, x):
        return self.neg_table[x]

    def format_element(self, x) -> str:
        return str(x)

    def __str__(self):
        return f"Table({self.size})"

    # -- construction --
    @classmethod
    def from_algebra(cls, alg) -> tuple["TableAlgebra", list]:
        """Tabulate any finite algebra exposing elements/oplus/neg; returns
        the table algebra and the element list (index -> original element),
        with the original zero at index 0."""
        elems = list(alg.elements())
        elems.sort(key=lambda e: (e != alg.zero, _sort_key(e)))
        index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        plus = [[index[alg.oplus(a, b)] for b in elems] for a in elems]
        neg = [index[alg.neg(a)] for a in elems]
        return cls(n, tuple(map(tuple, plus)), tuple(neg)), elems

    def to_json(self) -> dict:
        return {"size": self.size,
                "oplus": [v for row in self.oplus_table for v in row],
                "neg": list(self.neg_table)}

    @classmethod
    def from_json(cls, data: dict) -> "TableAlgebra":
        n = data["size"]
        flat = data["oplus"]
        rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        return cls(n, rows, tuple(data["neg"]))


def _sort_key(e):
    return (str(type(e)), repr(e))


def chain_table(n: int) -> TableAlgebra:
    """The (n+1)-element chain as tables."""
    rng = range(n + 1)
    plus = tuple(tuple(min(n, a + b) for b in rng) for a in rng)
    neg = tuple(n - a for a in rng)
    return TableAlgebra(n + 1, plus, neg)


def product_table(factors: Sequence[TableAlgebra]) -> TableAlgebra:
    alg, _ = TableAlgebra.from_algebra(ProductAlgebra(tuple(factors)))
    return alg


def subalgebra_table(alg: TableAlgebra, generators: Iterable[int]) -> TableAlgebra:
    """The subalgebra generated by the given carrier elements."""
    keep = {alg.zero}
    frontier = set(generators) | keep
    while frontier:
        keep |= frontier
        nxt = set()
        for x in keep:
            y = alg.neg(x)
            if y not in keep:
                nxt.add(y)
            for z in keep:
                w = alg.oplus(x, z)
                if w not in keep:
                    nxt.add(w)
        frontier = nxt
    elems = sorted(keep)

    class _Sub:
        zero = alg.zero

        @staticmethod
        def elements():
            return iter(elems)

        @staticmethod
        def oplus(a, b):
            return alg.oplus(a, b)

        @staticmethod
        def neg(a):
            return alg.neg(a)

    table, _ = TableAlgebra.from_algebra(_Sub)
    return table


# ---------------------------------------------------------------------------
# order, ideals, quotients
# ---------------------------------------------------------------------------

def _le(alg: TableAlgebra, x: int, y: int) -> bool:
    return alg.oplus(alg.neg(x), y) == alg.top


def _odot(alg: TableAlgebra, x: int, y: int) -> int:
    return alg.neg(alg.oplus(alg.neg(x), alg.neg(y)))


def is_ideal(alg: TableAlgebra, subset: frozenset) -> bool:
    if alg.zero not in subset:
        return False
    for x in subset:
        for y in subset:
            if alg.oplus(x, y) not in subset:
                return False
        for y in alg.elements():
            if _le(alg, y, x) and y not in subset:
                return False
    return True


@dataclass(frozen=True)
class Ideal:
    elements: frozenset
    prime: bool
    maximal: bool
    proper: bool

    def __contains__(self, x):
        return x in self.elements


def ideals(alg: TableAlgebra) -> list[Ideal]:
    """All ideals with prime/maximal flags.

    Prime: the quotient is a chain.  Maximal: the quotient is simple (for
    finite MV-algebras this matches embeddability into [0,1]).  The full
    ideal is neither prime nor maximal.
    """
    if alg.size > SIZE_GUARD:
        raise ResourceGuardError(f"carrier {alg.size} exceeds the guard {SIZE_GUARD}")
    out = []
    for m in alg.elements():
        if alg.oplus(m, m) != m:
            continue
        downset = frozenset(x for x in alg.elements() if _le(alg, x, m))
        proper = len(downset) < alg.size
        prime = maximal = False
        if proper:
            q = quotient(alg, downset)
            prime = _is_chain(q)
            maximal = _is_simple(q)
        out.append(Ideal(downset, prime, maximal, proper))
    out.sort(key=lambda ideal: (len(ideal.elements), sorted(ideal.elements)))
    return out


def _is_chain(alg: TableAlgebra) -> bool:
    return all(_le(alg, x, y) or _le(alg, y, x)
               for x in alg.elements() for y in alg.elements())


def _is_simple(alg: TableAlgebra) -> bool:
    if alg.size < 2:
        return False
    count = sum(1 for m in alg.elements() if alg.oplus(m, m) == m)
    return count == 2  # only the zero ideal and the full one


def quotient(alg: TableAlgebra, ideal: frozenset) -> TableAlgebra:
    """Quotient by the congruence x ~ y iff d(x, y) lies in the ideal,
    where d(x, y) = (x * ~y) + (y * ~x)."""
    if not is_ideal(alg, frozenset(ideal)):
        raise ValueError("subset is not an ideal")

    def dist(x, y):
        return alg.oplus(_odot(alg, x, alg.neg(y)), _odot(alg, y, alg.neg(x)))

    reps: list[int] = []
    rep_of: dict[int, int] = {}
    for x in alg.elements():
        for r in reps:
            if dist(x, r) in ideal:
                rep_of[x] = r
                break
        else:
            reps.append(x)
            rep_of[x] = x

    class _Quot:
        zero = rep_of[alg.zero]

        @staticmethod
        def elements():
            return iter(reps)

        @staticmethod
        def oplus(a, b):
            return rep_of[alg.oplus(a, b)]

        @staticmethod
        def neg(a):
            return rep_of[alg.neg(a)]

    table, _ = TableAlgebra.from_algebra(_Quot)
    return table


def is_bipartite(alg: TableAlgebra) -> bool:
    """True iff some ideal has the two-element quotient (equivalently, a
    homomorphism onto the Boolean chain exists)."""
    if alg.size > SIZE_GUARD:
        raise ResourceGuardError(f"carrier {alg.size} exceeds the guard {SIZE_GUARD}")
    if alg.size == 1:
        return True
    return any(not ideal.elements == frozenset(alg.elements())
               and quotient(alg, ideal.elements).size == 2
               for ideal in ideals(alg))


# ---------------------------------------------------------------------------
# homomorphisms and hom-separation membership (decides ISP(generators))
# ---------------------------------------------------------------------------

def minimal_generators(alg: TableAlgebra, max_size: int = 3) -> tuple[int, ...]:
    for r in range(0, max_size + 1):
        for combo in itertools.combinations(range(alg.size), r):
            if subalgebra_table(alg, combo).size == alg.size:
                return combo
    raise ResourceGuardError(
        f"no generating set of size <= {max_size} found for {alg}")


def homomorphisms(alg: TableAlgebra, target: TableAlgebra,
                  max_gens: int = 3) -> list[dict]:
    """All homomorphisms alg -> target, found by enumerating generator
    images and closing."""
    gens = minimal_generators(alg, max_gens)
    # expression DAG: how each element arises from the generators
    expr: dict[int, tuple] = {alg.zero: ("zero",)}
    for i, g in enumerate(gens):
        expr.setdefault(g, ("gen", i))
    while len(expr) < alg.size:
        new = {}
        for x in list(expr):
            y = alg.neg(x)
            if y not in expr and y not in new:
                new[y] = ("neg", x)
            for z in list(expr):
                w = alg.oplus(x, z)
                if w not in expr and w not in new:
                    new[w] = ("oplus", x, z)
        if not new:
            raise ValueError("generators do not generate the algebra")
        expr.update(new)

    order = _toposort(expr)
    out = []
    for images in itertools.product(range(target.size), repeat=len(gens)):
        h: dict[int, int] = {}
        for x in order:
            node = expr[x]
            if node[0] == "zero":
                h[x] = target.zero
            elif node[0] == "gen":
                h[x] = images[node[1]]
            elif node[0] == "neg":
                h[x] = target.neg(h[node[1]])
            else:
                h[x] = target.oplus(h[node[1]], h[node[2]])
        if all(h[alg.neg(x)] == target.neg(h[x]) for x in alg.elements()) and \
           all(h[alg.oplus(x, y)] == target.oplus(h[x], h[y])
               for x in alg.elements() for y in alg.elements()):
            out.append(h)
    return out


def _toposort(expr: dict) -> list:
    seen: list = []
    marked = set()

    def visit(x):
        if x in marked:
            return
        node = expr[x]
        for dep in node[1:]:
            if isinstance(dep, int) and node[0] != "gen":
                visit(dep)
        marked.add(x)
        seen.append(x)

    for x in expr:
        visit(x)
    return seen


def separates_into(alg: TableAlgebra, generators: Sequence[TableAlgebra]) -> bool:
    """Hom-separation test: the homomorphisms into the generator algebras
    jointly separate the points of alg.  Decides membership in
    ISP(generators); for the desk-scale suites here that coincides with
    quasivariety membership, but the general gap is documented."""
    if alg.size == 1:
        return True
    homs = [h for g in generators for h in homomorphisms(alg, g)]
    for x in alg.elements():
        for y in alg.elements():
            if x < y and all(h[x] == h[y] for h in homs):
                return False
    return True


def is_isomorphic(a: TableAlgebra, b: TableAlgebra) -> bool:
    if a.size != b.size:
        return False
    elems = list(range(1, a.size))
    for perm in itertools.permutations(range(1, b.size)):
        h = {0: 0}
        h.update(dict(zip(elems, perm)))
        if all(h[a.neg(x)] == b.neg(h[x]) for x in range(a.size)) and \
           all(h[a.oplus(x, y)] == b.oplus(h[x], h[y])
               for x in range(a.size) for y in range(a.size)):
            return True
    return False
