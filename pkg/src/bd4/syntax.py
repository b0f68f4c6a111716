"""Terms, formulas, signatures, free variables, substitution, printing.

Formulas are immutable trees.  The concrete syntax written by
``print_term``/``print_formula`` is the canonical one: it contains no
sugar (t1 != t2 and T are accepted by the parser but printed as
~(t1 = t2) and ~F), and parsing the printed form gives back the same
tree.  The canonical total order on formulas is the lexicographic order
of the printed form, which is what sequent sides are sorted by.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .values import EXTRA_CONNECTIVES


class SyntaxBuildError(Exception):
    """Raised for mis-built terms or formulas (arity or symbol problems)."""


# ---------------------------------------------------------------------------
# signatures

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")

_RESERVED = {"F", "T", "forall", "exists"} | set(EXTRA_CONNECTIVES)


@dataclass(frozen=True)
class Signature:
    """Non-logical symbols: functions and predicates by arity.

    Constants are functions of arity 0 and proposition symbols are
    predicates of arity 0.  Equality is built in and not listed.
    ``extras`` enables the optional extra connectives by name.
    """

    functions: tuple[tuple[str, int], ...] = ()
    predicates: tuple[tuple[str, int], ...] = ()
    extras: frozenset = frozenset()

    def __post_init__(self):
        seen = {}
        for name, arity in list(self.functions) + list(self.predicates):
            if not _IDENT.match(name) or name in _RESERVED:
                raise SyntaxBuildError("bad symbol name: %r" % (name,))
            if arity < 0:
                raise SyntaxBuildError("negative arity for %s" % name)
            if name in seen:
                raise SyntaxBuildError("symbol declared twice: %s" % name)
            seen[name] = arity
        if name_clash := (set(self.extras) - set(EXTRA_CONNECTIVES)):
            raise SyntaxBuildError("unknown extra connective: %s" % sorted(name_clash))

    def function_arity(self, name: str):
        for n, a in self.functions:
            if n == name:
                return a
        return None

    def predicate_arity(self, name: str):
        for n, a in self.predicates:
            if n == name:
                return a
        return None

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(n for n, a in self.functions if a == 0)

    @property
    def propositions(self) -> tuple[str, ...]:
        return tuple(n for n, a in self.predicates if a == 0)


def prop_signature(*names: str, extras=()) -> Signature:
    """Signature with only proposition symbols, the common test case."""
    return Signature(
        predicates=tuple((n, 0) for n in names), extras=frozenset(extras)
    )


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fun:
    """Function application; constants are Fun(name, ())."""

    name: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return "%s(%s)" % (self.name, ", ".join(str(a) for a in self.args))


Term = Var | Fun


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Falsity:
    def __str__(self) -> str:
        return "F"


@dataclass(frozen=True)
class Prop:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple

    def __str__(self) -> str:
        return "%s(%s)" % (self.name, ", ".join(str(a) for a in self.args))


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term

    def __str__(self) -> str:
        return "%s = %s" % (self.left, self.right)


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self) -> str:
        return "~" + _wrap(self.body, 4)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return "%s & %s" % (_wrap(self.left, 3), _wrap(self.right, 4))


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return "%s | %s" % (_wrap(self.left, 2), _wrap(self.right, 3))


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        # right-associative: the right child keeps the same level
        return "%s -> %s" % (_wrap(self.left, 2), _wrap(self.right, 1))


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return "forall %s. %s" % (self.var, self.body)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return "exists %s. %s" % (self.var, self.body)


@dataclass(frozen=True)
class ExtApp:
    """Application of an optional extra connective (Des p, Both, ...)."""

    conn: str
    args: tuple = ()

    def __post_init__(self):
        if self.conn not in EXTRA_CONNECTIVES:
            raise SyntaxBuildError("unknown extra connective: %r" % (self.conn,))
        if len(self.args) != EXTRA_CONNECTIVES[self.conn][0]:
            raise SyntaxBuildError("wrong arity for %s" % self.conn)

    def __str__(self) -> str:
        if not self.args:
            return self.conn
        return "%s %s" % (self.conn, _wrap(self.args[0], 4))


Formula = (
    Falsity | Prop | Pred | Eq | Not | And | Or | Imp | Forall | Exists | ExtApp
)

# Precedence levels for printing: 1 ->, 2 |, 3 &, 4 unary, 5 atoms.
# A child is parenthesized when its level is below the level its slot
# requires.  Quantifiers always parenthesize when used as an operand.
_LEVEL = {
    Imp: 1,
    Or: 2,
    And: 3,
    Not: 4,
    ExtApp: 4,
    Falsity: 5,
    Prop: 5,
    Pred: 5,
    Eq: 5,
    Forall: 0,
    Exists: 0,
}


def _wrap(a: "Formula", need: int) -> str:
    lvl = _LEVEL[type(a)]
    if isinstance(a, ExtApp) and not a.args:
        lvl = 5
    s = str(a)
    return "(" + s + ")" if lvl < need else s


def print_formula(a: Formula) -> str:
    return str(a)


def print_term(t: Term) -> str:
    return str(t)


def formula_key(a: Formula):
    """Sort key of the canonical total order on formulas."""
    return str(a)


# ---------------------------------------------------------------------------
# free variables and substitution


def free_vars(e) -> frozenset:
    match e:
        case Var(name):
            return frozenset({name})
        case Fun(_, args) | Pred(_, args) | ExtApp(_, args):
            out = frozenset()
            for a in args:
                out |= free_vars(a)
            return out
        case Eq(l, r):
            return free_vars(l) | free_vars(r)
        case Falsity() | Prop(_):
            return frozenset()
        case Not(b):
            return free_vars(b)
        case And(l, r) | Or(l, r) | Imp(l, r):
            return free_vars(l) | free_vars(r)
        case Forall(x, b) | Exists(x, b):
            return free_vars(b) - {x}
    raise TypeError("not a term or formula: %r" % (e,))


_STEM = re.compile(r"([A-Za-z_][A-Za-z_0-9]*?)(\d*)\Z")


def fresh_var(stem: str, avoid) -> str:
    """Least fresh variable: strip any digit suffix from the stem, then
    try stem1, stem2, ... and return the first name not in ``avoid``."""
    base = _STEM.match(stem).group(1)
    k = 1
    while True:
        cand = "%s%d" % (base, k)
        if cand not in avoid:
            return cand
        k += 1


def substitute_term(t: Term, x: str, s: Term) -> Term:
    match t:
        case Var(name):
            return s if name == x else t
        case Fun(name, args):
            return Fun(name, tuple(substitute_term(a, x, s) for a in args))
    raise TypeError("not a term: %r" % (t,))


def substitute(a: Formula, x: str, t: Term) -> Formula:
    """Replace free occurrences of x in a by t, renaming bound variables
    when a free variable of t would be captured."""
    match a:
        case Falsity() | Prop(_):
            return a
        case Pred(name, args):
            return Pred(name, tuple(substitute_term(u, x, t) for u in args))
        case Eq(l, r):
            return Eq(substitute_term(l, x, t), substitute_term(r, x, t))
        case ExtApp(conn, args):
            return ExtApp(conn, tuple(substitute(u, x, t) for u in args))
        case Not(b):
            return Not(substitute(b, x, t))
        case And(l, r):
            return And(substitute(l, x, t), substitute(r, x, t))
        case Or(l, r):
            return Or(substitute(l, x, t), substitute(r, x, t))
        case Imp(l, r):
            return Imp(substitute(l, x, t), substitute(r, x, t))
        case Forall(y, b) | Exists(y, b):
            cls = type(a)
            if y == x:
                return a
            if x not in free_vars(b):
                return a
            if y in free_vars(t):
                z = fresh_var(y, free_vars(b) | free_vars(t) | {x})
                b = substitute(b, y, Var(z))
                return cls(z, substitute(b, x, t))
            return cls(y, substitute(b, x, t))
    raise TypeError("not a formula: %r" % (a,))


# ---------------------------------------------------------------------------
# structure helpers


def subformulas(a: Formula):
    """All subformulas, the formula itself included."""
    yield a
    match a:
        case Not(b):
            yield from subformulas(b)
        case And(l, r) | Or(l, r) | Imp(l, r):
            yield from subformulas(l)
            yield from subformulas(r)
        case Forall(_, b) | Exists(_, b):
            yield from subformulas(b)
        case ExtApp(_, args):
            for u in args:
                yield from subformulas(u)


def is_atomic(a: Formula) -> bool:
    """Atomic formulas: proposition symbols, predicate applications,
    equalities, and nullary connectives (F, Both, Neither)."""
    match a:
        case Falsity() | Prop(_) | Pred(_, _) | Eq(_, _):
            return True
        case ExtApp(_, args):
            return not args
    return False


def is_literal(a: Formula) -> bool:
    if is_atomic(a):
        return True
    return isinstance(a, Not) and is_atomic(a.body)


def atomic_subformulas(gamma) -> frozenset:
    """AF of a formula collection: every atomic formula occurring as a
    subformula, the falsity constant included."""
    out = set()
    for g in gamma:
        for s in subformulas(g):
            if is_atomic(s):
                out.add(s)
    return frozenset(out)


def prop_atoms(a: Formula) -> frozenset:
    """Proposition symbols occurring in a propositional formula."""
    return frozenset(
        s.name for s in subformulas(a) if isinstance(s, Prop)
    )


def is_propositional(a: Formula) -> bool:
    return all(
        not isinstance(s, (Pred, Eq, Forall, Exists)) for s in subformulas(a)
    )


# ---------------------------------------------------------------------------
# sequents


@dataclass(frozen=True)
class Sequent:
    """A pair of finite formula sets; both sides are genuinely sets."""

    ant: frozenset = frozenset()
    suc: frozenset = frozenset()

    @staticmethod
    def of(ant=(), suc=()) -> "Sequent":
        return Sequent(frozenset(ant), frozenset(suc))

    def __str__(self) -> str:
        left = "; ".join(sorted((str(a) for a in self.ant)))
        right = "; ".join(sorted((str(a) for a in self.suc)))
        return "|- %s => %s" % (left, right)


TRUTH = Not(Falsity())
