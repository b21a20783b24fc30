"""Validity of rules/quasiequations over finite chains, lex chains, products.

Finite chains are decided by exhaustive search.  Lex chains are decided
symbolically: for every assignment of first coordinates, each subterm
evaluates to a pair (concrete first coordinate, affine integer form in the
unknown second coordinates); case splits happen exactly where a
first-coordinate comparison ties, and each branch ends in an integer linear
feasibility question handled by the exact solver in `linear`.  Products are
decided by decomposition into their factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .chains import FiniteChain, LexChain, LexElem, ProductAlgebra, eval_formula
from .errors import ResourceGuardError, VerificationError
from .formulas import (Formula, Iff, Imp, Join, Meet, Mult, Neg, Odot, One,
                       Oplus, Pow, Rule, Var, Zero, variables)
from .linear import Constraint, LinExpr, find_integer_point, rational_feasible


@dataclass(frozen=True)
class Quasiequation:
    """Antecedent equations g_i ~ 1 and a consequent f ~ 1.

    This is the algebraization image of a rule; the translation is a
    bijection on shapes.
    """

    antecedents: tuple[Formula, ...]
    consequent: Formula

    @classmethod
    def from_rule(cls, rule: Rule) -> "Quasiequation":
        return cls(tuple(rule.premises), rule.conclusion)

    def to_rule(self) -> Rule:
        return Rule(self.antecedents, self.consequent)

    def variables(self) -> frozenset[str]:
        out = variables(self.consequent)
        for a in self.antecedents:
            out |= variables(a)
        return out


@dataclass
class ValidityResult:
    """Tri-state verdict: 'valid', 'invalid' (with witness), or 'resource'."""

    status: str
    witness: Optional[dict] = None
    note: Optional[str] = None

    @property
    def is_valid(self) -> bool:
        return self.status == "valid"

    @property
    def is_invalid(self) -> bool:
        return self.status == "invalid"


class _BranchLimit(Exception):
    pass


# ---------------------------------------------------------------------------
# finite chains: exhaustive
# ---------------------------------------------------------------------------

def valid_on_finite_chain(q: Quasiequation, n: int, *,
                          assignment_limit: int = 2_000_000) -> ValidityResult:
    """Exhaustive decision over the (n+1)-element chain."""
    chain = FiniteChain(n)
    names = sorted(q.variables())
    total = (n + 1) ** len(names)
    if total > assignment_limit:
        raise ResourceGuardError(
            f"{total} assignments over L({n}) exceed the guard of {assignment_limit}")
    top = chain.top
    for values in itertools.product(range(n + 1), repeat=len(names)):
        assignment = dict(zip(names, values))
        if all(eval_formula(a, assignment, chain, check=False) == top
               for a in q.antecedents):
            if eval_formula(q.consequent, assignment, chain, check=False) != top:
                return ValidityResult("invalid", witness=assignment)
    return ValidityResult("valid")


# ---------------------------------------------------------------------------
# lex chains: symbolic with exact integer feasibility
# ---------------------------------------------------------------------------

class _Ctx:
    """Constraint stack with cheap feasibility pruning.

    Single-variable constraints are folded into per-variable integer
    intervals; systems containing multi-variable constraints fall back to
    exact rational Fourier-Motzkin for the prune.  The full stack is handed
    to the integer solver at branch completion.
    """

    def __init__(self):
        self.cons: list[Constraint] = []
        self.lo: dict[str, int] = {}
        self.hi: dict[str, int] = {}
        self.multi = 0
        self._undo: list[tuple] = []

    def push(self, con: Constraint) -> bool:
        expr = con.expr
        self.cons.append(con)
        feasible = True
        if not expr.coeffs:
            self._undo.append(("none",))
            feasible = (expr.const == 0) if con.kind == "eq" else (expr.const >= 0)
        elif len(expr.coeffs) == 1:
            (v, c), = expr.coeffs.items()
            old = (self.lo.get(v), self.hi.get(v))
            self._undo.append(("ival", v, old))
            if con.kind == "eq":
                if (-expr.const) % c != 0:
                    feasible = False
                else:
                    val = (-expr.const) // c
                    self._set_lo(v, val)
                    self._set_hi(v, val)
            elif c > 0:
                self._set_lo(v, _ceil_div(-expr.const, c))
            else:
                self._set_hi(v, _floor_div(expr.const, -c))
            lo, hi = self.lo.get(v), self.hi.get(v)
            if lo is not None and hi is not None and lo > hi:
                feasible = False
        else:
            self.multi += 1
            self._undo.append(("multi",))
            feasible = rational_feasible(self.cons)
        return feasible

    def _set_lo(self, v, val):
        cur = self.lo.get(v)
        if cur is None or val > cur:
            self.lo[v] = val

    def _set_hi(self, v, val):
        cur = self.hi.get(v)
        if cur is None or val < cur:
            self.hi[v] = val

    def pop(self):
        self.cons.pop()
        entry = self._undo.pop()
        if entry[0] == "ival":
            _, v, (lo, hi) = entry
            if lo is None:
                self.lo.pop(v, None)
            else:
                self.lo[v] = lo
            if hi is None:
                self.hi.pop(v, None)
            else:
                self.hi[v] = hi
        elif entry[0] == "multi":
            self.multi -= 1


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def _floor_div(p: int, q: int) -> int:
    return p // q


class _LexSymbolic:
    def __init__(self, chain: LexChain, branch_limit: int):
        self.chain = chain
        self.n = chain.n
        self.s = chain.s
        self.branch_limit = branch_limit
        self.splits = 0
        self.ctx = _Ctx()
        self.a_assign: dict[str, int] = {}

    # -- split bookkeeping --
    def _tick(self):
        self.splits += 1
        if self.splits > self.branch_limit:
            raise _BranchLimit

    # -- symbolic evaluation; yields (first coordinate, affine second) --
    def eval(self, f: Formula):
        n, s = self.n, self.s
        if isinstance(f, Var):
            yield (self.a_assign[f.name], LinExpr.variable(f.name))
        elif isinstance(f, Zero):
            yield (0, LinExpr.constant(0))
        elif isinstance(f, One):
            yield (n, LinExpr.constant(s))
        elif isinstance(f, Neg):
            for a, b in self.eval(f.sub):
                yield (n - a, b.scale(-1).shift(s))
        elif isinstance(f, Oplus):
            for va in self.eval(f.left):
                for vb in self.eval(f.right):
                    yield from self._oplus(va, vb)
        elif isinstance(f, Odot):
            for va in self.eval(f.left):
                for vb in self.eval(f.right):
                    yield from self._odot(va, vb)
        elif isinstance(f, Imp):
            for va in self.eval(f.left):
                for vb in self.eval(f.right):
                    yield from self._imp(va, vb)
        elif isinstance(f, Join):
            for va in self.eval(f.left):
                for vb in self.eval(f.right):
                    yield from self._max(va, vb)
        elif isinstance(f, Meet):
            for va in self.eval(f.left):
                for vb in self.eval(f.right):
                    yield from self._min(va, vb)
        elif isinstance(f, Iff):
            for va in self.eval(f.left):
                for vb in self.eval(f.right):
                    yield from self._iff(va, vb)
        elif isinstance(f, Mult):
            if f.count == 0:
                yield (0, LinExpr.constant(0))
            else:
                for v in self.eval(f.sub):
                    yield from self._fold(v, f.count - 1, self._oplus, v,
                                          bottom=None, top=(n, s))
        elif isinstance(f, Pow):
            if f.exp == 0:
                yield (n, LinExpr.constant(s))
            else:
                for v in self.eval(f.sub):
                    yield from self._fold(v, f.exp - 1, self._odot, v,
                                          bottom=(0, 0), top=None)
        else:
            raise TypeError(f"unknown formula node {f!r}")

    def _fold(self, acc, k, combine, operand, bottom, top):
        # k more applications of combine(acc, operand); all operand copies
        # denote the same element, so the operand branch is fixed
        if k == 0:
            yield acc
            return
        a, b = acc
        if top is not None and a == top[0] and b.is_const() and b.const == top[1]:
            yield acc
            return
        if bottom is not None and a == bottom[0] and b.is_const() and b.const == bottom[1]:
            yield acc
            return
        for nxt in combine(acc, operand):
            yield from self._fold(nxt, k - 1, combine, operand, bottom, top)

    def _branch(self, con: Constraint, value):
        ok = self.ctx.push(con)
        try:
            if ok:
                yield value
        finally:
            self.ctx.pop()

    def _oplus(self, va, vb):
        n, s = self.n, self.s
        a1, b1 = va
        a2, b2 = vb
        total = a1 + a2
        if total < n:
            yield (total, b1 + b2)
        elif total > n:
            yield (n, LinExpr.constant(s))
        else:
            bs = b1 + b2
            if bs.is_const():
                yield (n, LinExpr.constant(min(s, bs.const)))
            else:
                self._tick()
                yield from self._branch(Constraint.ge(bs.scale(-1).shift(s)), (n, bs))
                yield from self._branch(Constraint.ge(bs.shift(-(s + 1))),
                                        (n, LinExpr.constant(s)))

    def _odot(self, va, vb):
        n, s = self.n, self.s
        a1, b1 = va
        a2, b2 = vb
        total = a1 + a2 - n
        if total > 0:
            yield (total, (b1 + b2).shift(-s))
        elif total < 0:
            yield (0, LinExpr.constant(0))
        else:
            d = (b1 + b2).shift(-s)
            if d.is_const():
                yield (0, LinExpr.constant(max(0, d.const)))
            else:
                self._tick()
                yield from self._branch(Constraint.ge(d.scale(-1)), (0, LinExpr.constant(0)))
                yield from self._branch(Constraint.ge(d.shift(-1)), (0, d))

    def _imp(self, va, vb):
        n, s = self.n, self.s
        a1, b1 = va
        a2, b2 = vb
        if a2 > a1:
            yield (n, LinExpr.constant(s))
        elif a2 < a1:
            yield (n - a1 + a2, (b2 - b1).shift(s))
        else:
            d = b1 - b2
            if d.is_const():
                if d.const <= 0:
                    yield (n, LinExpr.constant(s))
                else:
                    yield (n, (b2 - b1).shift(s))
            else:
                self._tick()
                yield from self._branch(Constraint.ge(d), (n, (b2 - b1).shift(s)))
                yield from self._branch(Constraint.ge(d.scale(-1).shift(-1)),
                                        (n, LinExpr.constant(s)))

    def _max(self, va, vb):
        a1, b1 = va
        a2, b2 = vb
        if a1 > a2:
            yield va
        elif a2 > a1:
            yield vb
        else:
            d = b1 - b2
            if d.is_const():
                yield va if d.const >= 0 else vb
            else:
                self._tick()
                yield from self._branch(Constraint.ge(d), va)
                yield from self._branch(Constraint.ge(d.scale(-1).shift(-1)), vb)

    def _min(self, va, vb):
        a1, b1 = va
        a2, b2 = vb
        if a1 < a2:
            yield va
        elif a2 < a1:
            yield vb
        else:
            d = b1 - b2
            if d.is_const():
                yield va if d.const <= 0 else vb
            else:
                self._tick()
                yield from self._branch(Constraint.ge(d.scale(-1)), va)
                yield from self._branch(Constraint.ge(d.shift(-1)), vb)

    def _iff(self, va, vb):
        # in a chain x <-> y evaluates to top minus |x - y|
        n, s = self.n, self.s
        a1, b1 = va
        a2, b2 = vb
        if a1 < a2:
            yield (n - (a2 - a1), (b1 - b2).shift(s))
        elif a2 < a1:
            yield (n - (a1 - a2), (b2 - b1).shift(s))
        else:
            d = b1 - b2
            if d.is_const():
                if d.const == 0:
                    yield (n, LinExpr.constant(s))
                elif d.const > 0:
                    yield (n, (b2 - b1).shift(s))
                else:
                    yield (n, (b1 - b2).shift(s))
            else:
                self._tick()
                yield from self._branch(Constraint.eq(d), (n, LinExpr.constant(s)))
                yield from self._branch(Constraint.ge(d.shift(-1)), (n, (b2 - b1).shift(s)))
                yield from self._branch(Constraint.ge(d.scale(-1).shift(-1)),
                                        (n, (b1 - b2).shift(s)))

    # -- search ---------------------------------------------------------
    def find_counterexample(self, q: Quasiequation) -> Optional[dict]:
        names = sorted(q.variables())
        n, s = self.n, self.s
        for values in itertools.product(range(n + 1), repeat=len(names)):
            self.a_assign = dict(zip(names, values))
            self.ctx = _Ctx()
            ok = True
            for name, a in self.a_assign.items():
                if a == 0:
                    ok = ok and self.ctx.push(Constraint.ge(LinExpr.variable(name)))
                elif a == n:
                    ok = ok and self.ctx.push(
                        Constraint.ge(LinExpr.variable(name).scale(-1).shift(s)))
            if ok:
                witness = self._premises(q, 0)
                if witness is not None:
                    return witness
        return None

    def _premises(self, q: Quasiequation, i: int) -> Optional[dict]:
        n, s = self.n, self.s
        if i == len(q.antecedents):
            return self._consequent(q)
        for a, b in self.eval(q.antecedents[i]):
            if a != n:
                continue
            if b.is_const():
                if b.const != s:
                    continue
                res = self._premises(q, i + 1)
                if res is not None:
                    return res
            else:
                ok = self.ctx.push(Constraint.eq(b.shift(-s)))
                try:
                    if ok:
                        res = self._premises(q, i + 1)
                        if res is not None:
                            return res
                finally:
                    self.ctx.pop()
        return None

    def _consequent(self, q: Quasiequation) -> Optional[dict]:
        n, s = self.n, self.s
        for a, b in self.eval(q.consequent):
            if a != n:
                res = self._finish(q)
                if res is not None:
                    return res
            elif b.is_const():
                if b.const != s:
                    res = self._finish(q)
                    if res is not None:
                        return res
            else:
                for con in (Constraint.ge(b.scale(-1).shift(s - 1)),
                            Constraint.ge(b.shift(-(s + 1)))):
                    ok = self.ctx.push(con)
                    try:
                        if ok:
                            res = self._finish(q)
                            if res is not None:
                                return res
                    finally:
                        self.ctx.pop()
        return None

    def _finish(self, q: Quasiequation) -> Optional[dict]:
        solution = find_integer_point(self.ctx.cons)
        if solution is None:
            return None
        witness = {name: LexElem(a, solution.get(name, 0))
                   for name, a in self.a_assign.items()}
        top = self.chain.top
        for ant in q.antecedents:
            if eval_formula(ant, witness, self.chain) != top:
                raise VerificationError("symbolic witness fails a premise on re-evaluation")
        if eval_formula(q.consequent, witness, self.chain) == top:
            raise VerificationError("symbolic witness satisfies the conclusion on re-evaluation")
        return witness


def bounded_counterexample(q: Quasiequation, chain: LexChain, bound: int) -> Optional[dict]:
    """Brute-force search over carrier elements with |b| <= bound.

    Independent oracle for the symbolic decider; finding nothing proves
    nothing beyond the bound.
    """
    names = sorted(q.variables())
    elems = list(chain.elements_bounded(bound))
    top = chain.top
    for values in itertools.product(elems, repeat=len(names)):
        assignment = dict(zip(names, values))
        if all(eval_formula(a, assignment, chain, check=False) == top
               for a in q.antecedents):
            if eval_formula(q.consequent, assignment, chain, check=False) != top:
                return assignment
    return None


def valid_on_lex_chain(q: Quasiequation, n: int, s: int, *,
                       branch_limit: int = 100_000,
                       fallback_bound: int = 8) -> ValidityResult:
    """Symbolic decision over LexChain(n, s); never silently incomplete.

    On branch explosion the bounded enumeration fallback runs: a found
    counterexample is still definitive, otherwise the result is an explicit
    'resource' verdict.
    """
    chain = LexChain(n, s)
    sym = _LexSymbolic(chain, branch_limit)
    try:
        witness = sym.find_counterexample(q)
    except (_BranchLimit, ResourceGuardError):
        cex = bounded_counterexample(q, chain, fallback_bound)
        if cex is not None:
            return ValidityResult("invalid", witness=cex,
                                  note="found by bounded-enumeration fallback")
        return ValidityResult(
            "resource",
            note=f"branch guard tripped; bounded enumeration |b|<={fallback_bound} "
                 "found no counterexample (incomplete)")
    if witness is not None:
        return ValidityResult("invalid", witness=witness)
    return ValidityResult("valid")


# ---------------------------------------------------------------------------
# chains dispatch, antecedent satisfiability, products
# ---------------------------------------------------------------------------

def valid_on_chain(q: Quasiequation, chain, **kw) -> ValidityResult:
    if isinstance(chain, FiniteChain):
        return valid_on_finite_chain(q, chain.n)
    if isinstance(chain, LexChain):
        return valid_on_lex_chain(q, chain.n, chain.s, **kw)
    raise TypeError(f"not a chain: {chain!r}")


def antecedent_satisfiable(q: Quasiequation, chain) -> ValidityResult:
    """Search for an assignment making every antecedent equal to top.

    Returns 'invalid' with the satisfying assignment as witness (it is a
    counterexample to antecedents => 0 ~ 1), 'valid' if unsatisfiable.
    """
    probe = Quasiequation(q.antecedents, Zero())
    return valid_on_chain(probe, chain)


def valid_on_product(q: Quasiequation, factors: Sequence, **kw) -> ValidityResult:
    """Decide validity on a direct product via the factor decomposition.

    A quasiequation holds in a product iff the antecedent is unsatisfiable
    in some factor or the quasiequation holds in every factor.
    """
    sats = []
    for factor in factors:
        sat = antecedent_satisfiable(q, factor)
        if sat.status == "resource":
            return ValidityResult("resource", note=f"{factor}: {sat.note}")
        if sat.is_valid:
            return ValidityResult("valid",
                                  note=f"antecedent unsatisfiable in {factor}")
        sats.append(sat.witness)

    results = []
    for factor in factors:
        res = valid_on_chain(q, factor)
        if res.status == "resource":
            return ValidityResult("resource", note=f"{factor}: {res.note}")
        results.append(res)

    names = sorted(q.variables())
    for i, res in enumerate(results):
        if res.is_invalid:
            witness = {}
            for name in names:
                parts = []
                for j, factor in enumerate(factors):
                    if j == i:
                        parts.append(res.witness[name])
                    else:
                        parts.append(sats[j].get(name, factor.zero))
                witness[name] = tuple(parts)
            product = ProductAlgebra(tuple(factors))
            top = product.top
            if any(eval_formula(a, witness, product) != top for a in q.antecedents) \
                    or eval_formula(q.consequent, witness, product) == top:
                raise VerificationError("product witness fails re-evaluation")
            return ValidityResult("invalid", witness=witness)
    return ValidityResult("valid")


# ---------------------------------------------------------------------------
# derivability in L_{I,J} and in Q^1_{I,J}
# ---------------------------------------------------------------------------

@dataclass
class DerivabilityResult:
    derivable: bool
    algebra: object = None
    witness: Optional[dict] = None

    def __bool__(self):
        return self.derivable


def _derivable_over(rule: Rule, chains) -> DerivabilityResult:
    q = Quasiequation.from_rule(rule)
    for chain in chains:
        res = valid_on_chain(q, chain)
        if res.status == "resource":
            raise ResourceGuardError(f"{chain}: {res.note}")
        if res.is_invalid:
            return DerivabilityResult(False, chain, res.witness)
    return DerivabilityResult(True)


def derivable(rule: Rule, pair) -> DerivabilityResult:
    """Derivability in L_{I,J}: validity over the L_i (i in I) and the
    lex chains with s = 0 (j in J), by finite strong completeness."""
    chains = [FiniteChain(i) for i in sorted(pair.I)]
    chains += [LexChain(j, 0) for j in sorted(pair.J)]
    return _derivable_over(rule, chains)


def derivable_q1(rule: Rule, pair) -> DerivabilityResult:
    """Validity over the generators of Q^1_{I,J}: the L_m (m in I) and the
    s = 1 lex chains (n in J)."""
    chains = [FiniteChain(m) for m in sorted(pair.I)]
    chains += [LexChain(n, 1) for n in sorted(pair.J)]
    return _derivable_over(rule, chains)
