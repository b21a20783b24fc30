"""Abstract syntax, parsing, printing and substitution for Lukasiewicz formulas.

The core signature is {oplus, neg, 0}; the remaining connectives are kept as
sugar nodes and eliminated by `normalize`.  Concrete syntax (precedence from
tightest to loosest):

    ^ and scalar prefix `n.`,  ~,  *,  +,  or/and,  ->,  <->

    f ::= "0" | "1" | ident | "~" f | f "^" nat | nat "." f
        | f "*" f | f "+" f | f "or" f | f "and" f | f "->" f | f "<->" f
        | "(" f ")"

`*` is strong conjunction, `+` is strong disjunction, `n.f` is the n-fold
sum f + ... + f.  A rule is written `f1, ..., fk / f` (premises may be empty:
`/ f`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import FormulaSyntaxError


class Formula:
    """Base class for formula nodes; all nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self):
        return formula_to_text(self)


@dataclass(frozen=True, slots=True)
class Zero(Formula):
    pass


@dataclass(frozen=True, slots=True)
class One(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    sub: Formula


@dataclass(frozen=True, slots=True)
class Oplus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Odot(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Join(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Meet(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Mult(Formula):
    count: int
    sub: Formula


@dataclass(frozen=True, slots=True)
class Pow(Formula):
    sub: Formula
    exp: int


ZERO = Zero()
ONE = One()

_BINARY = (Oplus, Odot, Imp, Join, Meet, Iff)


@dataclass(frozen=True)
class Rule:
    """A single-conclusion rule: finitely many premises and one conclusion."""

    premises: tuple[Formula, ...]
    conclusion: Formula

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def __str__(self):
        return rule_to_text(self)


# ---------------------------------------------------------------------------
# structural helpers
# ---------------------------------------------------------------------------

def variables(f: Formula) -> frozenset[str]:
    """Set of variable names occurring in f."""
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, Neg):
            stack.append(g.sub)
        elif isinstance(g, (Mult, Pow)):
            stack.append(g.sub)
        elif isinstance(g, _BINARY):
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def rule_variables(rule: Rule) -> frozenset[str]:
    out = variables(rule.conclusion)
    for p in rule.premises:
        out |= variables(p)
    return out


def size(f: Formula) -> int:
    """Number of AST nodes (sugar nodes count once)."""
    if isinstance(f, (Zero, One, Var)):
        return 1
    if isinstance(f, Neg):
        return 1 + size(f.sub)
    if isinstance(f, (Mult, Pow)):
        return 1 + size(f.sub)
    return 1 + size(f.left) + size(f.right)


def depth(f: Formula) -> int:
    """Height of the AST; constants and variables have depth 0."""
    if isinstance(f, (Zero, One, Var)):
        return 0
    if isinstance(f, (Neg, Mult, Pow)):
        return 1 + depth(f.sub)
    return 1 + max(depth(f.left), depth(f.right))


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (Neg, Mult, Pow)):
        yield from subformulas(f.sub)
    elif isinstance(f, _BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def substitute(f: Formula, sigma: Mapping[str, Formula]) -> Formula:
    """Simultaneous substitution; variables outside sigma are unchanged."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        key = id(g)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(g, Var):
            out = sigma.get(g.name, g)
        elif isinstance(g, (Zero, One)):
            out = g
        elif isinstance(g, Neg):
            out = Neg(go(g.sub))
        elif isinstance(g, Mult):
            out = Mult(g.count, go(g.sub))
        elif isinstance(g, Pow):
            out = Pow(go(g.sub), g.exp)
        else:
            out = type(g)(go(g.left), go(g.right))
        memo[key] = out
        return out

    return go(f)


def substitute_rule(rule: Rule, sigma: Mapping[str, Formula]) -> Rule:
    return Rule(tuple(substitute(p, sigma) for p in rule.premises),
                substitute(rule.conclusion, sigma))


def normalize(f: Formula) -> Formula:
    """Eliminate every sugar node; result mentions only oplus, neg, 0, Var.

    Total and idempotent.  Mult/Pow are expanded in balanced shape (sound by
    associativity of + and *), so normalized depth stays logarithmic in the
    scalar.
    """
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        key = id(g)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(g, (Zero, Var)):
            out = g
        elif isinstance(g, One):
            out = Neg(ZERO)
        elif isinstance(g, Neg):
            out = Neg(go(g.sub))
        elif isinstance(g, Oplus):
            out = Oplus(go(g.left), go(g.right))
        elif isinstance(g, Odot):
            out = _odot(go(g.left), go(g.right))
        elif isinstance(g, Imp):
            out = Oplus(Neg(go(g.left)), go(g.right))
        elif isinstance(g, Join):
            out = _join(go(g.left), go(g.right))
        elif isinstance(g, Meet):
            a, b = go(g.left), go(g.right)
            out = Neg(_join(Neg(a), Neg(b)))
        elif isinstance(g, Iff):
            a, b = go(g.left), go(g.right)
            fwd = Oplus(Neg(a), b)
            bwd = Oplus(Neg(b), a)
            out = Neg(_join(Neg(fwd), Neg(bwd)))
        elif isinstance(g, Mult):
            out = _mult(g.count, go(g.sub))
        elif isinstance(g, Pow):
            out = _power(go(g.sub), g.exp)
        else:
            raise TypeError(f"unknown formula node {g!r}")
        memo[key] = out
        return out

    def _odot(a, b):
        return Neg(Oplus(Neg(a), Neg(b)))

    def _join(a, b):
        return Oplus(Neg(Oplus(Neg(a), b)), b)

    def _mult(n, a):
        if n <= 0:
            return ZERO
        if n == 1:
            return a
        half = n // 2
        return Oplus(_mult(n - half, a), _mult(half, a))

    def _power(a, n):
        if n <= 0:
            return Neg(ZERO)
        if n == 1:
            return a
        half = n // 2
        return _odot(_power(a, n - half), _power(a, half))

    return go(f)


def is_normalized(f: Formula) -> bool:
    return all(isinstance(g, (Zero, Var, Neg, Oplus)) for g in subformulas(f))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><->|->|[~*+^.()/,]))"
)

_KEYWORDS = {"or", "and"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise FormulaSyntaxError(f"unknown token {text[pos:].lstrip()[:1]!r}", pos)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("ident") is not None:
            word = m.group("ident")
            kind = "kw" if word in _KEYWORDS else "ident"
            tokens.append((kind, word, m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.peek()
        if val != value or kind == "eof":
            raise FormulaSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)
        return self.advance()

    def at(self, value):
        kind, val, _ = self.peek()
        return kind != "eof" and val == value

    # <-> (right associative, loosest)
    def parse_iff(self):
        left = self.parse_imp()
        if self.at("<->"):
            self.advance()
            return Iff(left, self.parse_iff())
        return left

    # -> (right associative)
    def parse_imp(self):
        left = self.parse_latt()
        if self.at("->"):
            self.advance()
            return Imp(left, self.parse_imp())
        return left

    # or / and share one left-associative level
    def parse_latt(self):
        left = self.parse_plus()
        while True:
            kind, val, _ = self.peek()
            if kind == "kw" and val == "or":
                self.advance()
                left = Join(left, self.parse_plus())
            elif kind == "kw" and val == "and":
                self.advance()
                left = Meet(left, self.parse_plus())
            else:
                return left

    def parse_plus(self):
        left = self.parse_star()
        while self.at("+"):
            self.advance()
            left = Oplus(left, self.parse_star())
        return left

    def parse_star(self):
        left = self.parse_unary()
        while self.at("*"):
            self.advance()
            left = Odot(left, self.parse_unary())
        return left

    def parse_unary(self):
        if self.at("~"):
            self.advance()
            return Neg(self.parse_unary())
        return self.parse_scalar()

    # scalar prefix n.f and postfix ^n sit on the tightest level
    def parse_scalar(self):
        kind, val, pos = self.peek()
        if kind == "num" and self.tokens[self.i + 1][1] == ".":
            self.advance()
            self.expect(".")
            return Mult(int(val), self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self):
        f = self.parse_primary()
        while self.at("^"):
            self.advance()
            kind, val, pos = self.peek()
            if kind != "num":
                raise FormulaSyntaxError("exponent must be a numeral", pos)
            self.advance()
            f = Pow(f, int(val))
        return f

    def parse_primary(self):
        kind, val, pos = self.advance()
        if kind == "num":
            if val == "0":
                return ZERO
            if val == "1":
                return ONE
            raise FormulaSyntaxError(
                f"numeral {val!r} is only legal as a scalar prefix or exponent", pos)
        if kind == "ident":
            return Var(val)
        if val == "(":
            f = self.parse_iff()
            self.expect(")")
            return f
        raise FormulaSyntaxError(f"unexpected {val or 'end of input'!r}", pos)

    def parse_formula_all(self):
        f = self.parse_iff()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"trailing input {val!r}", pos)
        return f


def parse_formula(text: str) -> Formula:
    """Parse a formula; raises FormulaSyntaxError with a position on bad input."""
    return _Parser(text).parse_formula_all()


def parse_rule(text: str) -> Rule:
    """Parse `f1, ..., fk / f`; the premise list may be empty (`/ f`)."""
    if "/" not in text:
        raise FormulaSyntaxError("a rule needs a '/' separating premises from conclusion")
    head, sep, tail = text.partition("/")
    if "/" in tail:
        raise FormulaSyntaxError("more than one '/' in rule")
    premises: list[Formula] = []
    head = head.strip()
    if head:
        for part in head.split(","):
            premises.append(parse_formula(part))
    return Rule(tuple(premises), parse_formula(tail))


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

# precedence levels used by the printer; higher binds tighter
_LVL_IFF, _LVL_IMP, _LVL_LATT, _LVL_PLUS, _LVL_STAR, _LVL_NEG, _LVL_SCALAR, _LVL_POW, _LVL_ATOM = range(9)


def _print(f: Formula) -> tuple[str, int]:
    if isinstance(f, Zero):
        return "0", _LVL_ATOM
    if isinstance(f, One):
        return "1", _LVL_ATOM
    if isinstance(f, Var):
        return f.name, _LVL_ATOM
    if isinstance(f, Neg):
        s = _wrap(f.sub, _LVL_NEG)
        return "~" + s, _LVL_NEG
    if isinstance(f, Mult):
        s = _wrap(f.sub, _LVL_SCALAR)
        return f"{f.count}.{s}", _LVL_SCALAR
    if isinstance(f, Pow):
        s = _wrap(f.sub, _LVL_POW)
        return f"{s}^{f.exp}", _LVL_POW
    if isinstance(f, Odot):
        return _binop(f, "*", _LVL_STAR, right_assoc=False)
    if isinstance(f, Oplus):
        return _binop(f, "+", _LVL_PLUS, right_assoc=False)
    if isinstance(f, Join):
        return _binop(f, "or", _LVL_LATT, right_assoc=False, spaced=True)
    if isinstance(f, Meet):
        return _binop(f, "and", _LVL_LATT, right_assoc=False, spaced=True)
    if isinstance(f, Imp):
        return _binop(f, "->", _LVL_IMP, right_assoc=True, spaced=True)
    if isinstance(f, Iff):
        return _binop(f, "<->", _LVL_IFF, right_assoc=True, spaced=True)
    raise TypeError(f"unknown formula node {f!r}")


def _wrap(f: Formula, minimum: int) -> str:
    s, lvl = _print(f)
    if lvl < minimum:
        return "(" + s + ")"
    return s


def _binop(f, sym, lvl, right_assoc, spaced=False):
    if right_assoc:
        ls = _wrap(f.left, lvl + 1)
        rs = _wrap(f.right, lvl)
    else:
        ls = _wrap(f.left, lvl)
        rs = _wrap(f.right, lvl + 1)
    joiner = f" {sym} " if spaced else sym
    return ls + joiner + rs, lvl


def formula_to_text(f: Formula) -> str:
    """Canonical text; parse_formula(formula_to_text(f)) == f for every AST."""
    return _print(f)[0]


def rule_to_text(rule: Rule) -> str:
    head = ", ".join(formula_to_text(p) for p in rule.premises)
    return (head + " / " if head else "/ ") + formula_to_text(rule.conclusion)
