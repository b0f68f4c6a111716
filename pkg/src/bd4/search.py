"""Backward proof search for the propositional fragment.

The search decides first and searches second: an exhaustive truth-table
oracle settles whether the sequent holds, and only the positive case
goes to backward search, so countermodels always come from the oracle
and never from a failed bounded search.

All base decompositions used here are invertible on the matrix (the
premise set holds exactly when the conclusion does, pointwise per
valuation), which makes the base search complete without Cut: decompose
until only literals remain, close by Id / F-L / notF-R, and a stuck
literal-only sequent is genuinely invalid.  The not-L / not-R pack
rules are applied only at stuck literal-only sequents, as backtracking
choice points; each application consumes one negated literal, so that
phase terminates too.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel import Derivation, DerivationStep, check_derivation
from .semantics import consequence_prop
from .syntax import (
    And, Falsity, Imp, Not, Or, Sequent, formula_key, is_literal,
)
from .values import ALL_VALUES, CL_VALUES, K3_VALUES, LP_VALUES

MODES = ("base", "lp", "k3", "cl")

_MODE_VALUES = {
    "base": ALL_VALUES, "lp": LP_VALUES, "k3": K3_VALUES, "cl": CL_VALUES,
}

_MODE_PACK_RULES = {
    "base": (), "lp": ("not-R",), "k3": ("not-L",), "cl": ("not-L", "not-R"),
}


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 200
    max_nodes: int = 100_000
    mode: str = "base"

    def __post_init__(self):
        if self.max_depth <= 0 or self.max_nodes <= 0:
            raise ValueError("budget bounds must be positive")
        if self.mode not in MODES:
            raise ValueError("unknown mode %r" % (self.mode,))


@dataclass
class SearchResult:
    status: str  # proved | refuted | exhausted
    proof: Derivation | None = None
    countermodel: dict | None = None

    @property
    def proved(self) -> bool:
        return self.status == "proved"


def decide_prop(s: Sequent, allowed=ALL_VALUES):
    """Exact propositional decision with a countervaluation on failure."""
    return consequence_prop(s.ant, s.suc, allowed)


class _Exhausted(Exception):
    pass


@dataclass
class _Node:
    rule: str
    sequent: Sequent
    children: tuple = ()
    principal: object = None


def _closure(s: Sequent) -> _Node | None:
    for a in s.ant:
        if isinstance(a, Falsity):
            return _Node("F-L", s)
    nf = Not(Falsity())
    if nf in s.suc:
        return _Node("notF-R", s)
    for a in s.ant:
        if a in s.suc and is_literal(a):
            return _Node("Id", s, principal=a)
    return None


def _decompositions(s: Sequent):
    """Backward reading of the base rules: (rule, principal, premises)."""
    for a in sorted(s.ant, key=formula_key):
        rest = s.ant - {a}
        match a:
            case And(x, y):
                yield "and-L", a, (Sequent(rest | {x, y}, s.suc),)
            case Or(x, y):
                yield "or-L", a, (Sequent(rest | {x}, s.suc),
                                  Sequent(rest | {y}, s.suc))
            case Imp(x, y):
                yield "imp-L", a, (Sequent(rest, s.suc | {x}),
                                   Sequent(rest | {y}, s.suc))
            case Not(Not(x)):
                yield "notnot-L", a, (Sequent(rest | {x}, s.suc),)
            case Not(And(x, y)):
                yield "notand-L", a, (Sequent(rest | {Not(x)}, s.suc),
                                      Sequent(rest | {Not(y)}, s.suc))
            case Not(Or(x, y)):
                yield "notor-L", a, (Sequent(rest | {Not(x), Not(y)}, s.suc),)
            case Not(Imp(x, y)):
                yield "notimp-L", a, (Sequent(rest | {x, Not(y)}, s.suc),)
    for a in sorted(s.suc, key=formula_key):
        rest = s.suc - {a}
        match a:
            case And(x, y):
                yield "and-R", a, (Sequent(s.ant, rest | {x}),
                                   Sequent(s.ant, rest | {y}))
            case Or(x, y):
                yield "or-R", a, (Sequent(s.ant, rest | {x, y}),)
            case Imp(x, y):
                yield "imp-R", a, (Sequent(s.ant | {x}, rest | {y}),)
            case Not(Not(x)):
                yield "notnot-R", a, (Sequent(s.ant, rest | {x}),)
            case Not(And(x, y)):
                yield "notand-R", a, (Sequent(s.ant, rest | {Not(x), Not(y)}),)
            case Not(Or(x, y)):
                yield "notor-R", a, (Sequent(s.ant, rest | {Not(x)}),
                                     Sequent(s.ant, rest | {Not(y)}))
            case Not(Imp(x, y)):
                yield "notimp-R", a, (Sequent(s.ant, rest | {x}),
                                      Sequent(s.ant, rest | {Not(y)}))


def _pack_moves(s: Sequent, pack_rules):
    """Choice points at a stuck literal-only sequent."""
    if "not-L" in pack_rules:
        for a in sorted(s.ant, key=formula_key):
            match a:
                case Not(x):
                    yield "not-L", a, (Sequent(s.ant - {a}, s.suc | {x}),)
    if "not-R" in pack_rules:
        for a in sorted(s.suc, key=formula_key):
            match a:
                case Not(x):
                    yield "not-R", a, (Sequent(s.ant | {x}, s.suc - {a}),)


class _Searcher:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.pack_rules = _MODE_PACK_RULES[budget.mode]
        self.nodes = 0
        self.memo: dict = {}

    def solve(self, s: Sequent, depth: int) -> _Node | None:
        if s in self.memo:
            return self.memo[s]
        if depth > self.budget.max_depth:
            raise _Exhausted
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _Exhausted

        node = _closure(s)
        if node is None:
            moves = list(_decompositions(s))
            if moves:
                # all decompositions are invertible, so commit to the first
                rule, principal, premises = moves[0]
                kids = []
                for p in premises:
                    kid = self.solve(p, depth + 1)
                    if kid is None:
                        node = None
                        break
                    kids.append(kid)
                else:
                    node = _Node(rule, s, tuple(kids), principal)
            else:
                # stuck on literals: pack rules are genuine choice points
                for rule, principal, premises in _pack_moves(s, self.pack_rules):
                    kid = self.solve(premises[0], depth + 1)
                    if kid is not None:
                        node = _Node(rule, s, (kid,), principal)
                        break
        self.memo[s] = node
        return node


def _linearize(root: _Node) -> Derivation:
    steps = []
    index_of: dict = {}
    used_packs = set()

    def emit(node: _Node) -> int:
        got = index_of.get(id(node))
        if got is not None:
            return got
        prem = tuple(emit(k) for k in node.children)
        if node.rule in ("not-L", "not-R"):
            used_packs.add("notLR")
        steps.append(DerivationStep(
            node.rule, node.sequent, premises=prem, principal=node.principal,
        ))
        idx = len(steps) - 1
        index_of[id(node)] = idx
        return idx

    emit(root)
    return Derivation(tuple(steps), packs=frozenset(used_packs))


def prove_prop(s: Sequent, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Prove, refute, or give up on a propositional sequent.

    The oracle runs first over the valuation set matching the budget's
    mode, so a refutation is always a genuine countervaluation.  On the
    positive side the backward search builds a derivation; its packs
    field names the notLR pack exactly when a pack rule was used.
    """
    holds, witness = decide_prop(s, _MODE_VALUES[budget.mode])
    if not holds:
        return SearchResult("refuted", countermodel=witness)
    searcher = _Searcher(budget)
    try:
        root = searcher.solve(s, 0)
    except _Exhausted:
        return SearchResult("exhausted")
    if root is None:
        # the oracle said valid but the search failed; with invertible
        # decompositions this cannot happen, so surface it loudly
        raise RuntimeError("search disagrees with oracle on %s" % (s,))
    return SearchResult("proved", proof=_linearize(root))
