"""Omega-terms, identities between them, and the varieties R, L and W.

Grammar (whitespace ignored)::

    term   := factor+          (or the empty string, the empty word)
    factor := atom ["^w"]
    atom   := letter | "(" term ")"

``^w`` (or ``^ω``) is the omega power, evaluated as the unique idempotent
power of an element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import AssignmentBudgetExceeded, ParseError, UnboundVariable
from .monoid_core import FiniteMonoid

ASSIGNMENT_CAP = 10**8


@dataclass(frozen=True)
class One:
    """The empty word."""

    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Concat:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{self.left}{self.right}"


@dataclass(frozen=True)
class OmegaPower:
    sub: "Term"

    def __str__(self) -> str:
        if isinstance(self.sub, Var):
            return f"{self.sub}^w"
        return f"({self.sub})^w"


Term = Union[One, Var, Concat, OmegaPower]


def variables(term: Term) -> frozenset:
    if isinstance(term, Var):
        return frozenset([term.name])
    if isinstance(term, Concat):
        return variables(term.left) | variables(term.right)
    if isinstance(term, OmegaPower):
        return variables(term.sub)
    return frozenset()


# ---------------------------------------------------------------- parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def term(self) -> Term:
        factors = []
        while (c := self.peek()) is not None and c != ")":
            factors.append(self.factor())
        if not factors:
            raise ParseError("expected a letter or '('", self.pos)
        result = factors[0]
        for f in factors[1:]:
            result = Concat(result, f)
        return result

    def factor(self) -> Term:
        atom = self.atom()
        while self.peek() == "^":
            self.pos += 1
            c = self.peek()
            if c not in ("w", "ω"):
                raise ParseError("expected 'w' after '^'", self.pos)
            self.pos += 1
            atom = OmegaPower(atom)
        return atom

    def atom(self) -> Term:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.term()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if c is not None and c.isalpha():
            self.pos += 1
            return Var(c)
        raise ParseError(f"unexpected {c!r}" if c else "unexpected end of input", self.pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    if p.peek() is None:
        return One()
    term = p.term()
    if p.peek() is not None:
        raise ParseError(f"unexpected {p.peek()!r}", p.pos)
    return term


# ---------------------------------------------------------------- evaluation


def eval_term(term: Term, m: FiniteMonoid, assignment: dict) -> int:
    if isinstance(term, Var):
        try:
            return assignment[term.name]
        except KeyError:
            raise UnboundVariable(term.name) from None
    if isinstance(term, Concat):
        return m.table[eval_term(term.left, m, assignment)][eval_term(term.right, m, assignment)]
    if isinstance(term, OmegaPower):
        return m._omega[eval_term(term.sub, m, assignment)]
    return m.identity


def _compile(term: Term, slot: dict):
    """Closure evaluating ``term`` on (table, omega, identity, values-tuple)."""
    if isinstance(term, Var):
        i = slot[term.name]
        return lambda t, om, e, vals: vals[i]
    if isinstance(term, Concat):
        f, g = _compile(term.left, slot), _compile(term.right, slot)
        return lambda t, om, e, vals: t[f(t, om, e, vals)][g(t, om, e, vals)]
    if isinstance(term, OmegaPower):
        f = _compile(term.sub, slot)
        return lambda t, om, e, vals: om[f(t, om, e, vals)]
    return lambda t, om, e, vals: e


# ---------------------------------------------------------------- identities


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    name: str | None = None

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(variables(self.lhs) | variables(self.rhs)))

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"

    def reversed(self) -> "Identity":
        return Identity(self.rhs, self.lhs, self.name)


def parse_identity(text: str) -> Identity:
    if text.count("=") != 1:
        raise ParseError("an identity needs exactly one '='", text.find("=") if "=" in text else len(text))
    left, right = text.split("=")
    try:
        rhs = parse_term(right)
    except ParseError as exc:
        raise ParseError(str(exc).rsplit(" at position", 1)[0], exc.position + len(left) + 1) from None
    return Identity(parse_term(left), rhs)


R_IDENTITY = Identity(parse_term("(xy)^w x"), parse_term("(xy)^w"), "R")
L_IDENTITY = Identity(parse_term("x (zx)^w"), parse_term("(zx)^w"), "L")
W_IDENTITY = Identity(parse_term("(xy)^w x (zx)^w"), parse_term("(xy)^w (zx)^w"), "W")

NAMED_IDENTITIES = {"R": R_IDENTITY, "L": L_IDENTITY, "W": W_IDENTITY}


def resolve_identity(text: str) -> Identity:
    """A predefined name (R, L, W) or an ``lhs = rhs`` string."""
    if text.strip() in NAMED_IDENTITIES:
        return NAMED_IDENTITIES[text.strip()]
    return parse_identity(text)


class Verdict(NamedTuple):
    holds: bool
    counterexample: dict | None = None


def satisfies_identity(m: FiniteMonoid, identity: Identity, cap: int = ASSIGNMENT_CAP) -> Verdict:
    """Exhaustive check over all assignments of the identity's variables.

    Assignments run in odometer order (sorted variable names, last one
    fastest), and the first failing assignment is returned.
    """
    names = identity.variables
    if m.size ** len(names) > cap:
        raise AssignmentBudgetExceeded(
            f"{m.size}^{len(names)} assignments exceed the cap of {cap}")
    slot = {v: i for i, v in enumerate(names)}
    lhs, rhs = _compile(identity.lhs, slot), _compile(identity.rhs, slot)
    t, om, e = m.table, m._omega, m.identity
    for vals in itertools.product(range(m.size), repeat=len(names)):
        if lhs(t, om, e, vals) != rhs(t, om, e, vals):
            return Verdict(False, dict(zip(names, vals)))
    return Verdict(True)


def in_R(m: FiniteMonoid) -> bool:
    return satisfies_identity(m, R_IDENTITY).holds


def in_L(m: FiniteMonoid) -> bool:
    return satisfies_identity(m, L_IDENTITY).holds


def in_W(m: FiniteMonoid) -> bool:
    return satisfies_identity(m, W_IDENTITY).holds


# ---------------------------------------------------------------- lemma checkers


def check_lemma3(m: FiniteMonoid) -> list[tuple[int, int, int]]:
    """Triples (u, x, v) with u R ux and v L xv but uxv != uv."""
    g = m._green
    t = m.table
    bad = []
    for u in m:
        for x in m:
            ux = t[u][x]
            if g.r_class_of[u] != g.r_class_of[ux]:
                continue
            for v in m:
                xv = t[x][v]
                if g.l_class_of[v] == g.l_class_of[xv] and t[ux][v] != t[u][v]:
                    bad.append((u, x, v))
    return bad


class Lemma4Violation(NamedTuple):
    side: str
    u: int
    v: int
    a: int


def check_lemma4(m: FiniteMonoid) -> list[Lemma4Violation]:
    """Violations of: u R v R va implies u R ua, and u L v L av implies u L au."""
    g = m._green
    t = m.table
    r, l = g.r_class_of, g.l_class_of
    bad = []
    for u in m:
        for v in m:
            same_r = r[u] == r[v]
            same_l = l[u] == l[v]
            if not (same_r or same_l):
                continue
            for a in m:
                if same_r and r[v] == r[t[v][a]] and r[u] != r[t[u][a]]:
                    bad.append(Lemma4Violation("R", u, v, a))
                if same_l and l[v] == l[t[a][v]] and l[u] != l[t[a][u]]:
                    bad.append(Lemma4Violation("L", u, v, a))
    return bad
