"""Checking derivations against the sequent calculus.

A derivation is a numbered list of steps.  Each step names its rule,
cites earlier steps as premises, carries the instantiation data the rule
needs (principal formula, substituted term, eigenvariable), and states
its conclusion sequent.  The checker recomputes what the rule permits
from that data and compares; it never infers instantiations by pattern
matching, so failures point at exactly one field.

Sequent sides are sets.  A rule's conclusion is its context plus the
formulas the rule introduces, and because sets absorb duplicates the
introduced formula may coincide with a context member.  The checker
therefore tries every way of retaining introduced formulas in the
context (at most four combinations; Cut gets the analogous choice on
the cut formula) and accepts if any candidate reading works.  Under
this reading the Table 2 rules absorb weakening and no separate
weakening rule exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .syntax import (
    And, Eq, Exists, Falsity, Forall, Fun, Imp, Not, Or, Pred, Prop, Sequent,
    Signature, Var, free_vars, is_literal, substitute,
)


class Code:
    """Violation codes, one per distinguishable failure kind."""

    UNKNOWN_RULE = "unknown-rule"
    PACK_DISABLED = "pack-disabled"
    BAD_PREMISE_INDEX = "bad-premise-index"
    PREMISE_MISMATCH = "premise-mismatch"
    CONCLUSION_MISMATCH = "conclusion-mismatch"
    LITERAL_REQUIRED = "literal-required"
    EIGENVARIABLE = "eigenvariable"
    MISSING_FIELD = "missing-field"
    PRINCIPAL_SHAPE = "principal-shape"
    HYPOTHESIS_NOT_DECLARED = "hypothesis-not-declared"
    TARGET_MISMATCH = "target-mismatch"
    EMPTY_DERIVATION = "empty-derivation"


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    sequent: Sequent
    premises: tuple = ()
    principal: object = None
    t: object = None
    t2: object = None
    x: str | None = None
    y: str | None = None


@dataclass(frozen=True)
class Derivation:
    steps: tuple
    packs: frozenset = frozenset()
    hypotheses: tuple = ()

    @property
    def target(self):
        return self.steps[-1].sequent if self.steps else None


@dataclass(frozen=True)
class Violation:
    step: int
    code: str
    detail: str

    def __str__(self):
        return "step %d: %s (%s)" % (self.step, self.code, self.detail)


PACKS = ("notLR", "den")

# rule name -> (pack or None, premise count, required instantiation fields)
RULES = {
    "Id": (None, 0, ("principal",)),
    "Cut": (None, 2, ("principal",)),
    "F-L": (None, 0, ()),
    "notF-R": (None, 0, ()),
    "and-L": (None, 1, ("principal",)),
    "and-R": (None, 2, ("principal",)),
    "or-L": (None, 2, ("principal",)),
    "or-R": (None, 1, ("principal",)),
    "imp-L": (None, 2, ("principal",)),
    "imp-R": (None, 1, ("principal",)),
    "forall-L": (None, 1, ("principal", "t")),
    "forall-R": (None, 1, ("principal", "y")),
    "exists-L": (None, 1, ("principal", "y")),
    "exists-R": (None, 1, ("principal", "t")),
    "notnot-L": (None, 1, ("principal",)),
    "notnot-R": (None, 1, ("principal",)),
    "notand-L": (None, 2, ("principal",)),
    "notand-R": (None, 1, ("principal",)),
    "notor-L": (None, 1, ("principal",)),
    "notor-R": (None, 2, ("principal",)),
    "notimp-L": (None, 1, ("principal",)),
    "notimp-R": (None, 2, ("principal",)),
    "notforall-L": (None, 1, ("principal", "y")),
    "notforall-R": (None, 1, ("principal", "t")),
    "notexists-L": (None, 1, ("principal", "t")),
    "notexists-R": (None, 1, ("principal", "y")),
    "eq-Refl": (None, 1, ("t",)),
    "eq-Repl": (None, 1, ("principal", "x", "t", "t2")),
    "not-L": ("notLR", 1, ("principal",)),
    "not-R": ("notLR", 1, ("principal",)),
    "Den-L": ("den", 1, ("t", "t2")),
    "Den-R": ("den", 2, ("t", "t2")),
}

BASE_RULES = tuple(r for r, (p, _, _) in RULES.items() if p is None)
PACK_RULES = tuple(r for r, (p, _, _) in RULES.items() if p is not None)


class _Shape(Exception):
    """Principal formula does not have the form the rule introduces."""


def _parts(step: DerivationStep):
    """The rule's introduced formulas and per-premise additions.

    Returns (ca, cs, padds, eigen) where ca/cs are the formulas the
    conclusion adds on each side, padds lists (ant-additions,
    suc-additions) per premise, and eigen is (y, x, body) for the four
    rules with a freshness side condition.  Raises _Shape when the
    principal formula has the wrong top form.
    """
    p = step.principal
    r = step.rule
    if r == "Id":
        return (p,), (p,), (), None
    if r == "F-L":
        return (Falsity(),), (), (), None
    if r == "notF-R":
        return (), (Not(Falsity()),), (), None
    if r == "and-L":
        match p:
            case And(a1, a2):
                return (p,), (), (((a1, a2), ()),), None
        raise _Shape
    if r == "and-R":
        match p:
            case And(a1, a2):
                return (), (p,), (((), (a1,)), ((), (a2,))), None
        raise _Shape
    if r == "or-L":
        match p:
            case Or(a1, a2):
                return (p,), (), (((a1,), ()), ((a2,), ())), None
        raise _Shape
    if r == "or-R":
        match p:
            case Or(a1, a2):
                return (), (p,), (((), (a1, a2)),), None
        raise _Shape
    if r == "imp-L":
        match p:
            case Imp(a1, a2):
                return (p,), (), (((), (a1,)), ((a2,), ())), None
        raise _Shape
    if r == "imp-R":
        match p:
            case Imp(a1, a2):
                return (), (p,), (((a1,), (a2,)),), None
        raise _Shape
    if r == "forall-L":
        match p:
            case Forall(x, a):
                return (p,), (), (((substitute(a, x, step.t),), ()),), None
        raise _Shape
    if r == "forall-R":
        match p:
            case Forall(x, a):
                inst = substitute(a, x, Var(step.y))
                return (), (p,), (((), (inst,)),), (step.y, x, a)
        raise _Shape
    if r == "exists-L":
        match p:
            case Exists(x, a):
                inst = substitute(a, x, Var(step.y))
                return (p,), (), (((inst,), ()),), (step.y, x, a)
        raise _Shape
    if r == "exists-R":
        match p:
            case Exists(x, a):
                return (), (p,), (((), (substitute(a, x, step.t),)),), None
        raise _Shape
    if r == "notnot-L":
        match p:
            case Not(Not(a)):
                return (p,), (), (((a,), ()),), None
        raise _Shape
    if r == "notnot-R":
        match p:
            case Not(Not(a)):
                return (), (p,), (((), (a,)),), None
        raise _Shape
    if r == "notand-L":
        match p:
            case Not(And(a1, a2)):
                return (p,), (), (((Not(a1),), ()), ((Not(a2),), ())), None
        raise _Shape
    if r == "notand-R":
        match p:
            case Not(And(a1, a2)):
                return (), (p,), (((), (Not(a1), Not(a2))),), None
        raise _Shape
    if r == "notor-L":
        match p:
            case Not(Or(a1, a2)):
                return (p,), (), (((Not(a1), Not(a2)), ()),), None
        raise _Shape
    if r == "notor-R":
        match p:
            case Not(Or(a1, a2)):
                return (), (p,), (((), (Not(a1),)), ((), (Not(a2),))), None
        raise _Shape
    if r == "notimp-L":
        match p:
            case Not(Imp(a1, a2)):
                return (p,), (), (((a1, Not(a2)), ()),), None
        raise _Shape
    if r == "notimp-R":
        match p:
            case Not(Imp(a1, a2)):
                return (), (p,), (((), (a1,)), ((), (Not(a2),))), None
        raise _Shape
    if r == "notforall-L":
        match p:
            case Not(Forall(x, a)):
                inst = Not(substitute(a, x, Var(step.y)))
                return (p,), (), (((inst,), ()),), (step.y, x, a)
        raise _Shape
    if r == "notforall-R":
        match p:
            case Not(Forall(x, a)):
                return (), (p,), (((), (Not(substitute(a, x, step.t)),)),), None
        raise _Shape
    if r == "notexists-L":
        match p:
            case Not(Exists(x, a)):
                return (p,), (), (((Not(substitute(a, x, step.t)),), ()),), None
        raise _Shape
    if r == "notexists-R":
        match p:
            case Not(Exists(x, a)):
                inst = Not(substitute(a, x, Var(step.y)))
                return (), (p,), (((), (inst,)),), (step.y, x, a)
        raise _Shape
    if r == "eq-Refl":
        return (), (), (((Eq(step.t, step.t),), ()),), None
    if r == "eq-Repl":
        new = substitute(p, step.x, step.t2)
        old = substitute(p, step.x, step.t)
        return (Eq(step.t, step.t2), new), (), (((old,), ()),), None
    if r == "not-L":
        match p:
            case Not(a):
                return (p,), (), (((), (a,)),), None
        raise _Shape
    if r == "not-R":
        match p:
            case Not(a):
                return (), (p,), (((a,), ()),), None
        raise _Shape
    if r == "Den-L":
        den = Or(Eq(step.t, step.t2), Not(Eq(step.t, step.t2)))
        return (den,), (), (((Eq(step.t, step.t), Eq(step.t2, step.t2)), ()),), None
    if r == "Den-R":
        den = Or(Eq(step.t, step.t2), Not(Eq(step.t, step.t2)))
        return (), (den,), (((), (Eq(step.t, step.t),)),
                            ((), (Eq(step.t2, step.t2),))), None
    raise ValueError("no parts for rule %s" % r)


def _subsets(items):
    items = tuple(items)
    for k in range(len(items) + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)


def _check_cut(i: int, step: DerivationStep, prem) -> Violation | None:
    a = step.principal
    p1, p2 = prem
    if a not in p1.suc:
        return Violation(i, Code.PREMISE_MISMATCH,
                         "cut formula %s not in first premise succedent" % a)
    if a not in p2.ant:
        return Violation(i, Code.PREMISE_MISMATCH,
                         "cut formula %s not in second premise antecedent" % a)
    cut = frozenset((a,))
    for r1 in (True, False):
        for r2 in (True, False):
            want = Sequent(
                p1.ant | (p2.ant - cut if r2 else p2.ant),
                (p1.suc - cut if r1 else p1.suc) | p2.suc,
            )
            if step.sequent == want:
                return None
    return Violation(i, Code.CONCLUSION_MISMATCH,
                     "conclusion is not the premises' cut combination")


def check_step(d: Derivation, i: int) -> Violation | None:
    step = d.steps[i]
    if step.rule == "hypothesis":
        if step.premises:
            return Violation(i, Code.BAD_PREMISE_INDEX,
                             "hypothesis steps cite no premises")
        if step.sequent not in d.hypotheses:
            return Violation(i, Code.HYPOTHESIS_NOT_DECLARED, str(step.sequent))
        return None
    spec = RULES.get(step.rule)
    if spec is None:
        return Violation(i, Code.UNKNOWN_RULE, step.rule)
    pack, n_prem, needs = spec
    if pack is not None and pack not in d.packs:
        return Violation(i, Code.PACK_DISABLED,
                         "%s needs pack %s" % (step.rule, pack))
    if len(step.premises) != n_prem:
        return Violation(i, Code.BAD_PREMISE_INDEX,
                         "%s takes %d premises, got %d"
                         % (step.rule, n_prem, len(step.premises)))
    if any(not isinstance(j, int) or not 0 <= j < i for j in step.premises):
        return Violation(i, Code.BAD_PREMISE_INDEX,
                         "premise indices must point at earlier steps")
    for field in needs:
        if getattr(step, field) is None:
            return Violation(i, Code.MISSING_FIELD,
                             "%s requires %s" % (step.rule, field))

    if step.rule == "Id" and not is_literal(step.principal):
        return Violation(i, Code.LITERAL_REQUIRED, str(step.principal))
    if step.rule == "eq-Repl" and not is_literal(step.principal):
        return Violation(i, Code.LITERAL_REQUIRED, str(step.principal))

    prem = [d.steps[j].sequent for j in step.premises]
    if step.rule == "Cut":
        return _check_cut(i, step, prem)

    try:
        ca, cs, padds, eigen = _parts(step)
    except _Shape:
        return Violation(i, Code.PRINCIPAL_SHAPE,
                         "%s cannot introduce %s" % (step.rule, step.principal))

    concl = step.sequent
    for a in ca:
        if a not in concl.ant:
            return Violation(i, Code.CONCLUSION_MISMATCH,
                             "%s missing on the left" % a)
    for a in cs:
        if a not in concl.suc:
            return Violation(i, Code.CONCLUSION_MISMATCH,
                             "%s missing on the right" % a)

    if eigen is not None:
        yv, xv, body = eigen
        if yv != xv and yv in free_vars(body):
            return Violation(i, Code.EIGENVARIABLE,
                             "%s is free in the quantified formula" % yv)

    base_ant = concl.ant - frozenset(ca)
    base_suc = concl.suc - frozenset(cs)
    eigen_blocked = False
    for keep_a in _subsets(ca):
        for keep_s in _subsets(cs):
            gamma = base_ant | keep_a
            delta = base_suc | keep_s
            ok = all(
                prem[k] == Sequent(gamma | frozenset(pa), delta | frozenset(ps))
                for k, (pa, ps) in enumerate(padds)
            )
            if not ok:
                continue
            if eigen is not None:
                yv = eigen[0]
                if any(yv in free_vars(g) for g in gamma) or any(
                    yv in free_vars(s) for s in delta
                ):
                    eigen_blocked = True
                    continue
            return None
    if eigen_blocked:
        return Violation(i, Code.EIGENVARIABLE,
                         "%s is free in the conclusion context" % eigen[0])
    pa, ps = padds[0] if padds else ((), ())
    want = Sequent(base_ant | frozenset(pa), base_suc | frozenset(ps))
    return Violation(i, Code.PREMISE_MISMATCH,
                     "expected first premise like %s, got %s"
                     % (want, prem[0] if prem else "none"))


def check_derivation(d: Derivation):
    """(True, None) if every step checks, else (False, first violation)."""
    if not d.steps:
        return False, Violation(0, Code.EMPTY_DERIVATION, "no steps")
    for pk in d.packs:
        if pk not in PACKS:
            return False, Violation(0, Code.PACK_DISABLED, "unknown pack %s" % pk)
    for i in range(len(d.steps)):
        v = check_step(d, i)
        if v is not None:
            return False, v
    return True, None


def is_proof(d: Derivation) -> bool:
    """A proof is a hypothesis-free derivation that checks."""
    return not d.hypotheses and check_derivation(d)[0]


def derives(gamma, delta, d: Derivation) -> bool:
    """Does the derivation establish that delta follows from gamma?

    True when d is a proof whose target antecedent is a subset of gamma
    and target succedent a subset of delta.
    """
    if not d.steps or not is_proof(d):
        return False
    target = d.target
    return target.ant <= frozenset(gamma) and target.suc <= frozenset(delta)


def equality_axioms(sig: Signature):
    """The equality axiom set for a signature: reflexivity, c = c per
    constant, p implies p per proposition, and one congruence formula
    per function and predicate symbol."""
    out = [Forall("x", Eq(Var("x"), Var("x")))]
    for name in sig.constants:
        out.append(Eq(Fun(name), Fun(name)))
    for name, arity in sig.functions:
        if arity == 0:
            continue
        xs = [Var("x%d" % (i + 1)) for i in range(arity)]
        ys = [Var("y%d" % (i + 1)) for i in range(arity)]
        ant = Eq(xs[0], ys[0])
        for i in range(1, arity):
            ant = And(ant, Eq(xs[i], ys[i]))
        body = Imp(ant, Eq(Fun(name, tuple(xs)), Fun(name, tuple(ys))))
        for i in reversed(range(arity)):
            body = Forall(xs[i].name, Forall(ys[i].name, body))
        out.append(body)
    for name in sig.propositions:
        out.append(Imp(Prop(name), Prop(name)))
    for name, arity in sig.predicates:
        if arity == 0:
            continue
        xs = [Var("x%d" % (i + 1)) for i in range(arity)]
        ys = [Var("y%d" % (i + 1)) for i in range(arity)]
        ant = Eq(xs[0], ys[0])
        for i in range(1, arity):
            ant = And(ant, Eq(xs[i], ys[i]))
        ant = And(ant, Pred(name, tuple(xs)))
        body = Imp(ant, Pred(name, tuple(ys)))
        for i in reversed(range(arity)):
            body = Forall(xs[i].name, Forall(ys[i].name, body))
        out.append(body)
    return tuple(out)
