"""Exact feasibility of integer linear constraint systems.

Constraints are affine forms with integer coefficients, either `expr >= 0`
or `expr == 0`.  Strict inequalities over the integers are expressed
losslessly as `expr - 1 >= 0`.

`rational_feasible` runs Fourier-Motzkin elimination (kept all-integer by
cross-multiplying, so it is exact).  `find_integer_point` decides integer
feasibility completely and returns a witness: equalities are eliminated by
unimodular coefficient descent, inequalities by elimination with integer
tightening, and the gap between the rational shadow and the integer
projection is closed with the dark-shadow bound plus splinter equalities.
An integer point is then recovered by searching within the elimination
bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .errors import ResourceGuardError, VerificationError


class LinExpr:
    """Affine integer form: sum of coef*var plus a constant."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs=None, const=0):
        self.coeffs = {v: c for v, c in (coeffs or {}).items() if c != 0}
        self.const = const

    @classmethod
    def constant(cls, c: int) -> "LinExpr":
        return cls({}, c)

    @classmethod
    def variable(cls, name: str) -> "LinExpr":
        return cls({name: 1}, 0)

    def __add__(self, other: "LinExpr") -> "LinExpr":
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return LinExpr(coeffs, self.const + other.const)

    def __sub__(self, other: "LinExpr") -> "LinExpr":
        return self + other.scale(-1)

    def __neg__(self) -> "LinExpr":
        return self.scale(-1)

    def scale(self, k: int) -> "LinExpr":
        if k == 0:
            return LinExpr({}, 0)
        return LinExpr({v: k * c for v, c in self.coeffs.items()}, k * self.const)

    def shift(self, c: int) -> "LinExpr":
        return LinExpr(self.coeffs, self.const + c)

    def drop(self, var: str) -> "LinExpr":
        coeffs = dict(self.coeffs)
        coeffs.pop(var, None)
        return LinExpr(coeffs, self.const)

    def subst(self, var: str, repl: "LinExpr") -> "LinExpr":
        c = self.coeffs.get(var)
        if c is None:
            return self
        return self.drop(var) + repl.scale(c)

    def evaluate(self, assignment) -> int:
        return self.const + sum(c * assignment[v] for v, c in self.coeffs.items())

    def is_const(self) -> bool:
        return not self.coeffs

    def key(self):
        return (tuple(sorted(self.coeffs.items())), self.const)

    def __repr__(self):
        parts = [f"{c}*{v}" for v, c in sorted(self.coeffs.items())]
        parts.append(str(self.const))
        return " + ".join(parts)


@dataclass(frozen=True)
class Constraint:
    kind: str  # 'ge' (expr >= 0) or 'eq' (expr == 0)
    expr: LinExpr

    @classmethod
    def ge(cls, expr: LinExpr) -> "Constraint":
        return cls("ge", expr)

    @classmethod
    def gt(cls, expr: LinExpr) -> "Constraint":
        # expr > 0 over the integers is expr - 1 >= 0
        return cls("ge", expr.shift(-1))

    @classmethod
    def eq(cls, expr: LinExpr) -> "Constraint":
        return cls("eq", expr)

    def holds(self, assignment) -> bool:
        v = self.expr.evaluate(assignment)
        return v == 0 if self.kind == "eq" else v >= 0

    def key(self):
        return (self.kind, self.expr.key())


LinearSystem = list  # list[Constraint]; one system per case-split branch


def _floordiv(p: int, q: int) -> int:
    return p // q


def _ceildiv(p: int, q: int) -> int:
    return -((-p) // q)


def _content(expr: LinExpr) -> int:
    g = 0
    for c in expr.coeffs.values():
        g = gcd(g, abs(c))
    return g


# ---------------------------------------------------------------------------
# rational feasibility (exact, all-integer Fourier-Motzkin)
# ---------------------------------------------------------------------------

def rational_feasible(constraints: Iterable[Constraint]) -> bool:
    """True iff the system has a rational solution."""
    work: list[LinExpr] = []
    for con in constraints:
        if con.kind == "eq":
            work.append(con.expr)
            work.append(con.expr.scale(-1))
        else:
            work.append(con.expr)

    # scale down only when the division is exact; rational feasibility must
    # not round constants
    def reduce_exact(expr: LinExpr) -> LinExpr:
        g = _content(expr)
        if g > 1 and expr.const % g == 0:
            return LinExpr({v: c // g for v, c in expr.coeffs.items()}, expr.const // g)
        return expr

    work = [reduce_exact(e) for e in work]
    while True:
        variables = set()
        for e in work:
            variables.update(e.coeffs)
        if not variables:
            return all(e.const >= 0 for e in work)
        # eliminate the variable with the fewest lower*upper combinations
        def cost(v):
            lo = sum(1 for e in work if e.coeffs.get(v, 0) > 0)
            up = sum(1 for e in work if e.coeffs.get(v, 0) < 0)
            return lo * up - lo - up
        x = min(variables, key=lambda v: (cost(v), v))
        lowers, uppers, passthrough = [], [], []
        for e in work:
            c = e.coeffs.get(x, 0)
            if c > 0:
                lowers.append((c, e.drop(x)))      # c*x + L >= 0
            elif c < 0:
                uppers.append((-c, e.drop(x)))     # b*x <= U
            else:
                passthrough.append(e)
        new = passthrough
        seen = {e.key() for e in new}
        for a, low in lowers:
            for b, up in uppers:
                combo = reduce_exact(up.scale(a) + low.scale(b))
                if combo.is_const():
                    if combo.const < 0:
                        return False
                    continue
                if combo.key() not in seen:
                    seen.add(combo.key())
                    new.append(combo)
        work = new


# ---------------------------------------------------------------------------
# complete integer feasibility with witness
# ---------------------------------------------------------------------------

class _OmegaSolver:
    def __init__(self, node_limit: int):
        self.node_limit = node_limit
        self.nodes = 0
        self.fresh = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise ResourceGuardError("integer feasibility search exceeded its node limit")

    def _fresh_var(self) -> str:
        self.fresh += 1
        return f"#t{self.fresh}"

    def solve(self, constraints: list[Constraint]) -> Optional[dict]:
        self._tick()
        eqs = [c.expr for c in constraints if c.kind == "eq"]
        ineqs = [c.expr for c in constraints if c.kind == "ge"]
        defs: list[tuple[str, LinExpr]] = []

        while eqs:
            expr = eqs.pop()
            if expr.is_const():
                if expr.const != 0:
                    return None
                continue
            g = _content(expr)
            if expr.const % g != 0:
                return None
            if g > 1:
                expr = LinExpr({v: c // g for v, c in expr.coeffs.items()}, expr.const // g)
            unit = next((v for v, c in expr.coeffs.items() if abs(c) == 1), None)
            if unit is not None:
                c = expr.coeffs[unit]
                rest = expr.drop(unit)
                repl = rest.scale(-1) if c == 1 else rest
                eqs = [e.subst(unit, repl) for e in eqs]
                ineqs = [e.subst(unit, repl) for e in ineqs]
                defs.append((unit, repl))
                continue
            # unimodular descent: x_k = x_k' - sum_i q_i x_i shrinks the
            # other coefficients modulo a_k, preserving integer solutions
            k, ak = min(expr.coeffs.items(), key=lambda item: (abs(item[1]), item[0]))
            prime = self._fresh_var()
            repl_coeffs = {prime: 1}
            for v, c in expr.coeffs.items():
                if v == k:
                    continue
                q = c // ak
                if q:
                    repl_coeffs[v] = -q
            repl = LinExpr(repl_coeffs, 0)
            expr = expr.subst(k, repl)
            eqs = [e.subst(k, repl) for e in eqs]
            ineqs = [e.subst(k, repl) for e in ineqs]
            defs.append((k, repl))
            eqs.append(expr)

        partial = self._solve_ineqs(ineqs)
        if partial is None:
            return None
        assignment = dict(partial)
        for var, repl in reversed(defs):
            for v in repl.coeffs:
                assignment.setdefault(v, 0)
            assignment[var] = repl.evaluate(assignment)
        for con in constraints:
            for v in con.expr.coeffs:
                assignment.setdefault(v, 0)
            if not con.holds(assignment):
                raise VerificationError("integer point fails the system it was built for")
        return assignment

    def _solve_ineqs(self, ineqs: list[LinExpr]) -> Optional[dict]:
        self._tick()
        work: list[LinExpr] = []
        seen = set()
        for expr in ineqs:
            if expr.is_const():
                if expr.const < 0:
                    return None
                continue
            g = _content(expr)
            if g > 1:
                # integer tightening: sum a_i x_i + c >= 0 iff
                # sum (a_i/g) x_i + floor(c/g) >= 0
                expr = LinExpr({v: c // g for v, c in expr.coeffs.items()},
                               _floordiv(expr.const, g))
            if expr.key() not in seen:
                seen.add(expr.key())
                work.append(expr)
        if not work:
            return {}

        # peel off variables bounded on one side only; any solution of the
        # remaining system extends by taking the extreme of their bounds
        deferred: list[tuple[str, list[LinExpr]]] = []
        while True:
            variables = sorted({v for e in work for v in e.coeffs})
            onesided = None
            for v in variables:
                signs = {1 if e.coeffs[v] > 0 else -1 for e in work if v in e.coeffs}
                if len(signs) == 1:
                    onesided = v
                    break
            if onesided is None:
                break
            cons = [e for e in work if onesided in e.coeffs]
            work = [e for e in work if onesided not in e.coeffs]
            deferred.append((onesided, cons))

        if not work:
            base: Optional[dict] = {}
        else:
            base = self._eliminate(work)
        if base is None:
            return None

        for var, cons in reversed(deferred):
            for e in cons:
                for v in e.coeffs:
                    if v != var:
                        base.setdefault(v, 0)
            coef0 = cons[0].coeffs[var]
            if coef0 > 0:
                # only lower bounds a*x + L >= 0
                value = max(_ceildiv(-e.drop(var).evaluate(base), e.coeffs[var]) for e in cons)
            else:
                value = min(_floordiv(e.drop(var).evaluate(base), -e.coeffs[var]) for e in cons)
            base[var] = value
        return base

    def _eliminate(self, work: list[LinExpr]) -> Optional[dict]:
        self._tick()
        variables = sorted({v for e in work for v in e.coeffs})
        if not variables:
            return {} if all(e.const >= 0 for e in work) else None

        def cost(v):
            lo = sum(1 for e in work if e.coeffs.get(v, 0) > 0)
            up = sum(1 for e in work if e.coeffs.get(v, 0) < 0)
            return lo * up
        x = min(variables, key=lambda v: (cost(v), v))
        lowers, uppers, passthrough = [], [], []
        for e in work:
            c = e.coeffs.get(x, 0)
            if c > 0:
                lowers.append((c, e.drop(x)))      # c*x >= -L
            elif c < 0:
                uppers.append((-c, e.drop(x)))     # b*x <= U
            else:
                passthrough.append(e)
        if not lowers or not uppers:
            # one-sided vars were peeled off before elimination
            raise VerificationError("unexpected one-sided variable during elimination")

        def shadow(dark: bool) -> list[LinExpr]:
            out = list(passthrough)
            for a, low in lowers:
                for b, up in uppers:
                    combo = up.scale(a) + low.scale(b)
                    if dark:
                        combo = combo.shift(-(a - 1) * (b - 1))
                    out.append(combo)
            return out

        def pick_value(vals: dict) -> Optional[int]:
            lo = max(_ceildiv(-low.evaluate(vals), a) for a, low in lowers)
            hi = min(_floordiv(up.evaluate(vals), b) for b, up in uppers)
            if lo > hi:
                return None
            return lo

        exact = all(a == 1 for a, _ in lowers) or all(b == 1 for b, _ in uppers)
        if exact:
            sub = self._solve_ineqs(shadow(False))
            if sub is None:
                return None
            for _, e in lowers + uppers:
                for v in e.coeffs:
                    sub.setdefault(v, 0)
            value = pick_value(sub)
            if value is None:
                raise VerificationError("exact shadow failed to produce an integer value")
            sub[x] = value
            return sub

        sub = self._solve_ineqs(shadow(True))
        if sub is not None:
            for _, e in lowers + uppers:
                for v in e.coeffs:
                    sub.setdefault(v, 0)
            value = pick_value(sub)
            if value is None:
                raise VerificationError("dark shadow bound violated")
            sub[x] = value
            return sub

        cons = [Constraint.ge(e) for e in work]
        if not rational_feasible(cons):
            return None
        # any integer solution missed by the dark shadow is nestled just
        # above some lower bound: a*x + L = k with small k
        b_hat = max(b for b, _ in uppers)
        for a, low in lowers:
            if a < 2:
                continue
            kmax = (a * b_hat - a - b_hat) // b_hat
            for k in range(kmax + 1):
                expr = LinExpr(dict(low.coeffs), low.const)
                expr = expr + LinExpr({x: a}, -k)
                res = self.solve([Constraint.eq(expr)] + cons)
                if res is not None:
                    return res
        return None


def find_integer_point(constraints: Iterable[Constraint], *,
                       node_limit: int = 200_000) -> Optional[dict]:
    """An integer solution of the system, or None if there is none.

    Complete: a None answer means the system has no integer solutions.
    Raises ResourceGuardError if the search exceeds node_limit.
    """
    return _OmegaSolver(node_limit).solve(list(constraints))
