"""Evaluation and brute-force consequence for the four-valued logic.

Two evaluation paths exist on purpose: a propositional fast path over
valuations (dicts from proposition symbols to values) and the general
path over finite structures with assignments.  Their agreement on
degenerate structures is part of the test suite.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .syntax import (
    And, Eq, Exists, ExtApp, Falsity, Forall, Fun, Imp, Not, Or, Pred, Prop,
    Signature, Var, free_vars, is_propositional, prop_atoms, subformulas,
)
from .values import (
    ALL_VALUES, B, CL_VALUES, DESIGNATED, EXTRA_CONNECTIVES, F, K3_VALUES,
    LP_VALUES, N, T, TruthValue, VALUES, designated, imp, inf, join, meet,
    neg, sup,
)


class SemanticsError(Exception):
    pass


class EnumerationCapExceeded(SemanticsError):
    """The requested structure sweep would exceed the configured cap."""


# ---------------------------------------------------------------------------
# propositional evaluation


def evaluate_prop(a, valuation: dict) -> TruthValue:
    """Value of a propositional formula under a valuation."""
    match a:
        case Prop(name):
            try:
                return valuation[name]
            except KeyError:
                raise SemanticsError("no value for proposition %s" % name) from None
        case Falsity():
            return F
        case Not(b):
            return neg(evaluate_prop(b, valuation))
        case And(l, r):
            return meet(evaluate_prop(l, valuation), evaluate_prop(r, valuation))
        case Or(l, r):
            return join(evaluate_prop(l, valuation), evaluate_prop(r, valuation))
        case Imp(l, r):
            return imp(evaluate_prop(l, valuation), evaluate_prop(r, valuation))
        case ExtApp(conn, args):
            arity, table = EXTRA_CONNECTIVES[conn]
            if arity == 0:
                return table
            return table[evaluate_prop(args[0], valuation)]
    raise SemanticsError("not a propositional formula: %s" % (a,))


def _check_allowed(allowed: frozenset):
    if allowed not in (ALL_VALUES, LP_VALUES, K3_VALUES, CL_VALUES):
        raise SemanticsError(
            "allowed value set must be one of the four closed restrictions"
        )


def _atoms_of(formulas) -> tuple:
    names = set()
    for a in formulas:
        if not is_propositional(a):
            raise SemanticsError("not propositional: %s" % (a,))
        names |= prop_atoms(a)
    return tuple(sorted(names))


def valuations(atoms, allowed=ALL_VALUES):
    """All valuations of the given atoms into the allowed set, in a fixed
    deterministic order (t, b, n, f per coordinate)."""
    _check_allowed(allowed)
    vals = tuple(v for v in VALUES if v in allowed)

    def generate():
        for combo in itertools.product(vals, repeat=len(atoms)):
            yield dict(zip(atoms, combo))

    return generate()


def consequence_prop(gamma, delta, allowed=ALL_VALUES):
    """Brute-force propositional consequence.

    Returns (True, None) when every valuation into ``allowed`` that
    designates all of gamma designates some member of delta, else
    (False, countervaluation).
    """
    _check_allowed(allowed)
    gamma, delta = list(gamma), list(delta)
    atoms = _atoms_of(gamma + delta)
    for v in valuations(atoms, allowed):
        if all(designated(evaluate_prop(g, v)) for g in gamma) and not any(
            designated(evaluate_prop(d, v)) for d in delta
        ):
            return False, v
    return True, None


def equivalent_prop(a, b):
    """Identical truth value under every valuation of the shared atoms."""
    atoms = _atoms_of([a, b])
    for v in valuations(atoms):
        if evaluate_prop(a, v) is not evaluate_prop(b, v):
            return False, v
    return True, None


def synonymous_prop(a, b) -> bool:
    """Synonymity decided through the four consequence checks.

    On this matrix the result coincides with logical equivalence; the
    test suite checks that coincidence rather than assuming it here.
    """
    for x, y in ((a, b), (b, a), (Not(a), Not(b)), (Not(b), Not(a))):
        ok, _ = consequence_prop([x], [y])
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# value vectors: the shared fast path for bulk propositional work

# A vector is the tuple of values a formula takes over ``valuations(atoms)``
# in their fixed order; the mask packs designation into bits, bit i set
# iff the i-th valuation designates the formula.


class PropSpace:
    """Precomputed valuation grid over a fixed atom tuple."""

    def __init__(self, atoms: tuple):
        self.atoms = tuple(atoms)
        self.grid = tuple(
            dict(v) for v in valuations(self.atoms, ALL_VALUES)
        )
        self.size = len(self.grid)
        self._vectors: dict = {}
        # indices of valuations that stay inside each restricted mode
        self.mode_indices = {}
        for name, allowed in (
            ("bd", ALL_VALUES), ("lp", LP_VALUES), ("k3", K3_VALUES),
            ("cl", CL_VALUES),
        ):
            self.mode_indices[name] = tuple(
                i for i, v in enumerate(self.grid)
                if all(val in allowed for val in v.values())
            )

    def vector(self, a) -> tuple:
        out = self._vectors.get(a)
        if out is None:
            out = tuple(evaluate_prop(a, v) for v in self.grid)
            self._vectors[a] = out
        return out

    def mask(self, a) -> int:
        m = 0
        for i, val in enumerate(self.vector(a)):
            if designated(val):
                m |= 1 << i
        return m

    def holds(self, gamma_masks, delta_masks, mode="bd") -> int | None:
        """Consequence over the mode's valuations; None when it holds,
        else the index of the first countervaluation."""
        g = ~0
        for m in gamma_masks:
            g &= m
        d = 0
        for m in delta_masks:
            d |= m
        for i in self.mode_indices[mode]:
            bit = 1 << i
            if g & bit and not d & bit:
                return i
        return None


# ---------------------------------------------------------------------------
# structures


@dataclass
class Structure:
    """A finite interpretation.

    ``eq`` maps ordered element pairs to values; it must designate equal
    pairs (of non-bottom elements) and, in partial mode, give n whenever
    either element is the bottom.  Pairs left out of ``eq`` default to
    t on equal and f on distinct pairs.
    """

    domain: tuple
    consts: dict = field(default_factory=dict)
    funcs: dict = field(default_factory=dict)
    props: dict = field(default_factory=dict)
    preds: dict = field(default_factory=dict)
    eq: dict = field(default_factory=dict)
    bottom: object = None

    def __post_init__(self):
        if not self.domain:
            raise SemanticsError("domain must be nonempty")
        if self.bottom is not None:
            if self.bottom not in self.domain:
                raise SemanticsError("bottom element not in domain")
            if len(self.domain) < 2:
                raise SemanticsError("partial mode needs a non-bottom element")
        full = {}
        for d1 in self.domain:
            for d2 in self.domain:
                v = self.eq.get((d1, d2))
                if self.bottom is not None and (d1 == self.bottom or d2 == self.bottom):
                    if v is not None and v is not N:
                        raise SemanticsError("equality at bottom must be N")
                    v = N
                elif d1 == d2:
                    if v is None:
                        v = T
                    elif not designated(v):
                        raise SemanticsError("equality on equal elements must be designated")
                elif v is None:
                    v = F
                full[(d1, d2)] = v
        self.eq = full

    def eval_term(self, t, assignment: dict):
        match t:
            case Var(name):
                try:
                    return assignment[name]
                except KeyError:
                    raise SemanticsError("unbound variable %s" % name) from None
            case Fun(name, args):
                if not args:
                    try:
                        return self.consts[name]
                    except KeyError:
                        raise SemanticsError("no interpretation for constant %s" % name) from None
                table = self.funcs.get(name)
                if table is None:
                    raise SemanticsError("no interpretation for function %s" % name)
                return table[tuple(self.eval_term(a, assignment) for a in args)]
        raise SemanticsError("not a term: %r" % (t,))


def evaluate(a, structure: Structure, assignment: dict | None = None) -> TruthValue:
    """Value of a formula in a structure under an assignment."""
    if assignment is None:
        assignment = {}
    return _eval(a, structure, dict(assignment))


def _eval(a, m: Structure, alpha: dict) -> TruthValue:
    match a:
        case Falsity():
            return F
        case Prop(name):
            try:
                return m.props[name]
            except KeyError:
                raise SemanticsError("no interpretation for proposition %s" % name) from None
        case Pred(name, args):
            table = m.preds.get(name)
            if table is None:
                raise SemanticsError("no interpretation for predicate %s" % name)
            return table[tuple(m.eval_term(t, alpha) for t in args)]
        case Eq(l, r):
            return m.eq[(m.eval_term(l, alpha), m.eval_term(r, alpha))]
        case Not(b):
            return neg(_eval(b, m, alpha))
        case And(l, r):
            return meet(_eval(l, m, alpha), _eval(r, m, alpha))
        case Or(l, r):
            return join(_eval(l, m, alpha), _eval(r, m, alpha))
        case Imp(l, r):
            return imp(_eval(l, m, alpha), _eval(r, m, alpha))
        case Forall(x, b):
            old, had = alpha.get(x), x in alpha
            vals = set()
            for d in m.domain:
                alpha[x] = d
                vals.add(_eval(b, m, alpha))
            if had:
                alpha[x] = old
            else:
                del alpha[x]
            return inf(vals)
        case Exists(x, b):
            old, had = alpha.get(x), x in alpha
            vals = set()
            for d in m.domain:
                alpha[x] = d
                vals.add(_eval(b, m, alpha))
            if had:
                alpha[x] = old
            else:
                del alpha[x]
            return sup(vals)
        case ExtApp(conn, args):
            arity, table = EXTRA_CONNECTIVES[conn]
            if arity == 0:
                return table
            return table[_eval(args[0], m, alpha)]
    raise SemanticsError("not a formula: %r" % (a,))


# ---------------------------------------------------------------------------
# structure enumeration and bounded first-order consequence


def _occurring_symbols(formulas, sig: Signature):
    funcs, preds, has_eq = set(), set(), False
    for a in formulas:
        for s in subformulas(a):
            match s:
                case Prop(name):
                    preds.add((name, 0))
                case Pred(name, _):
                    preds.add((name, sig.predicate_arity(name)))
                case Eq(_, _):
                    has_eq = True
        for s in subformulas(a):
            terms = []
            match s:
                case Pred(_, targs):
                    terms = list(targs)
                case Eq(l, r):
                    terms = [l, r]
            while terms:
                t = terms.pop()
                if isinstance(t, Fun):
                    funcs.add((t.name, sig.function_arity(t.name)))
                    terms.extend(t.args)
    return funcs, preds, has_eq


def count_structures(sig: Signature, size: int, mode: str = "total",
                     allowed=ALL_VALUES, need_eq: bool = True,
                     eq_distinct=None) -> int:
    nvals = len(allowed)
    ndist = nvals if eq_distinct is None else len(eq_distinct)
    k = size
    count = 1
    for _, a in sig.functions:
        count *= k ** (k ** a) if a else k
    for _, a in sig.predicates:
        count *= nvals ** (k ** a) if a else nvals
    if need_eq:
        if mode == "partial":
            real = k - 1
            count *= len(DESIGNATED & allowed) ** real
            count *= ndist ** (real * real - real)
        else:
            count *= len(DESIGNATED & allowed) ** k
            count *= ndist ** (k * k - k)
    return count


def enumerate_structures(sig: Signature, size: int, mode: str = "total",
                         allowed=ALL_VALUES, need_eq: bool = True,
                         eq_distinct=None):
    """All structures with the given domain size, in a fixed order.

    In partial mode the first domain element is the bottom and ``size``
    counts it, so size 2 means bottom plus one ordinary element.  The
    ``allowed`` restriction draws every predicate and equality value
    from that set (used for the LP/K3/CL submatrix spot checks).

    By default the equality table on distinct element pairs ranges over
    every allowed value, which is all the structure definition asks
    for.  ``eq_distinct`` narrows that range; it exists so soundness
    diagnostics can re-run a sweep over the subclass where designated
    equality implies element identity.
    """
    if mode == "partial":
        if size < 2:
            return
        if allowed is not ALL_VALUES:
            raise SemanticsError("partial mode does not combine with restrictions")
        domain = ("u",) + tuple("d%d" % i for i in range(1, size))
        bottom = "u"
        real = domain[1:]
    else:
        domain = tuple("d%d" % i for i in range(1, size + 1))
        bottom = None
        real = domain
    vals = tuple(v for v in VALUES if v in allowed)
    des_vals = tuple(v for v in (T, B) if v in allowed)

    const_names = [n for n, a in sig.functions if a == 0]
    func_syms = [(n, a) for n, a in sig.functions if a > 0]
    prop_names = [n for n, a in sig.predicates if a == 0]
    pred_syms = [(n, a) for n, a in sig.predicates if a > 0]

    const_choices = list(itertools.product(domain, repeat=len(const_names)))
    func_tables = []
    for name, a in func_syms:
        keys = list(itertools.product(domain, repeat=a))
        func_tables.append(
            (name, keys, list(itertools.product(domain, repeat=len(keys))))
        )
    prop_choices = list(itertools.product(vals, repeat=len(prop_names)))
    pred_tables = []
    for name, a in pred_syms:
        keys = list(itertools.product(domain, repeat=a))
        pred_tables.append(
            (name, keys, list(itertools.product(vals, repeat=len(keys))))
        )
    dist_vals = vals if eq_distinct is None else tuple(eq_distinct)
    if need_eq:
        eq_eq_keys = [(d, d) for d in real]
        eq_ne_keys = [
            (d1, d2) for d1 in real for d2 in real if d1 != d2
        ]
        eq_choices = [
            (dict(zip(eq_eq_keys, eqs)) | dict(zip(eq_ne_keys, nes)))
            for eqs in itertools.product(des_vals, repeat=len(eq_eq_keys))
            for nes in itertools.product(dist_vals, repeat=len(eq_ne_keys))
        ]
    else:
        eq_choices = [{}]

    for consts in const_choices:
        cmap = dict(zip(const_names, consts))
        for fchoice in itertools.product(*(t[2] for t in func_tables)):
            fmap = {
                name: dict(zip(keys, out))
                for (name, keys, _), out in zip(func_tables, fchoice)
            }
            for props in prop_choices:
                pmap = dict(zip(prop_names, props))
                for pchoice in itertools.product(*(t[2] for t in pred_tables)):
                    prmap = {
                        name: dict(zip(keys, out))
                        for (name, keys, _), out in zip(pred_tables, pchoice)
                    }
                    for eqt in eq_choices:
                        yield Structure(
                            domain=domain, consts=dict(cmap), funcs=fmap,
                            props=dict(pmap), preds=prmap, eq=dict(eqt),
                            bottom=bottom,
                        )


@dataclass
class FOResult:
    holds: bool
    structure: Structure | None = None
    assignment: dict | None = None

    def __bool__(self) -> bool:
        return self.holds


def consequence_fo(gamma, delta, sig: Signature, max_domain: int = 3,
                   mode: str = "total", cap: int = 10**7,
                   allowed=ALL_VALUES, eq_distinct=None) -> FOResult:
    """Search for a countermodel over all structures up to the domain bound.

    A True result means no countermodel up to the bound, not a decision.
    Only symbols that occur in the formulas are interpreted, which keeps
    the sweep small without changing the answer.
    """
    gamma, delta = list(gamma), list(delta)
    funcs, preds, has_eq = _occurring_symbols(gamma + delta, sig)
    for name, a in funcs | preds:
        if a is None:
            raise SemanticsError("symbol not in signature")
    small = Signature(
        functions=tuple(sorted(funcs)), predicates=tuple(sorted(preds)),
        extras=sig.extras,
    )
    fv = set()
    for a in gamma + delta:
        fv |= free_vars(a)
    fv = tuple(sorted(fv))

    sizes = range(2 if mode == "partial" else 1, max_domain + 1)
    total = 0
    for size in sizes:
        total += count_structures(small, size, mode, allowed, has_eq, eq_distinct)
    if total > cap:
        raise EnumerationCapExceeded(
            "would enumerate %d structures (cap %d)" % (total, cap)
        )

    for size in sizes:
        for m in enumerate_structures(small, size, mode, allowed, has_eq, eq_distinct):
            for combo in itertools.product(m.domain, repeat=len(fv)):
                alpha = dict(zip(fv, combo))
                if all(designated(_eval(g, m, dict(alpha))) for g in gamma) and not any(
                    designated(_eval(d, m, dict(alpha))) for d in delta
                ):
                    return FOResult(False, m, alpha)
    return FOResult(True)


# ---------------------------------------------------------------------------
# normality probe


_NORMALITY_CONNS = ("not", "and", "or", "imp")


def _random_formula(rng: random.Random, atoms, budget: int):
    if budget <= 0 or rng.random() < 0.3:
        return Prop(rng.choice(atoms)) if rng.random() < 0.9 else Falsity()
    kind = rng.choice(_NORMALITY_CONNS)
    if kind == "not":
        return Not(_random_formula(rng, atoms, budget - 1))
    l = _random_formula(rng, atoms, budget - 1)
    r = _random_formula(rng, atoms, budget - 1)
    return {"and": And, "or": Or, "imp": Imp}[kind](l, r)


def normality_probe(seed: int = 0, samples: int = 200) -> dict:
    """Property-check the normality biconditionals on random instances.

    Covers the atomic noninclusion checks, the three propositional
    splits (conjunction right, disjunction left, the deduction theorem)
    and the two quantifier conditions on domain-bounded structures.
    Returns a report dict with a list of failures (empty on success).
    """
    rng = random.Random(seed)
    atoms = ("p", "q", "r")
    failures = []
    checked = 0

    p = Prop("p")
    for a, b in ((p, Not(p)), (Not(p), p)):
        ok, _ = consequence_prop([a], [b])
        if ok:
            failures.append(("atomic-noninclusion", a, b))
        checked += 1

    for _ in range(samples):
        g = [_random_formula(rng, atoms, 2) for _ in range(rng.randrange(3))]
        d = [_random_formula(rng, atoms, 2) for _ in range(rng.randrange(3))]
        a1 = _random_formula(rng, atoms, 2)
        a2 = _random_formula(rng, atoms, 2)

        lhs, _ = consequence_prop(g, d + [And(a1, a2)])
        rhs = consequence_prop(g, d + [a1])[0] and consequence_prop(g, d + [a2])[0]
        if lhs != rhs:
            failures.append(("conjunction-right", g, d, a1, a2))

        lhs, _ = consequence_prop([Or(a1, a2)] + g, d)
        rhs = consequence_prop([a1] + g, d)[0] and consequence_prop([a2] + g, d)[0]
        if lhs != rhs:
            failures.append(("disjunction-left", g, d, a1, a2))

        lhs, _ = consequence_prop(g, d + [Imp(a1, a2)])
        rhs, _ = consequence_prop([a1] + g, d + [a2])
        if lhs != rhs:
            failures.append(("deduction", g, d, a1, a2))
        checked += 3

    sig = Signature(functions=(("c", 0),), predicates=(("P", 1), ("Q", 1)))
    x = Var("x")
    open_pool = [
        Pred("P", (x,)), Not(Pred("P", (x,))), Or(Pred("P", (x,)), Pred("Q", (x,))),
        And(Pred("P", (x,)), Pred("Q", (Fun("c"),))),
        Imp(Pred("P", (x,)), Pred("Q", (x,))),
    ]
    closed_pool = [
        Pred("P", (Fun("c"),)), Pred("Q", (Fun("c"),)),
        Exists("x", Pred("P", (Var("x"),))), Forall("x", Pred("Q", (Var("x"),))),
        Not(Pred("P", (Fun("c"),))),
    ]
    fo_samples = max(10, samples // 10)
    for _ in range(fo_samples):
        a1 = rng.choice(open_pool)
        g = rng.sample(closed_pool, rng.randrange(3))
        d = rng.sample(closed_pool, rng.randrange(3))

        lhs = consequence_fo(g, d + [Forall("x", a1)], sig, max_domain=2).holds
        rhs = consequence_fo(g, d + [a1], sig, max_domain=2).holds
        if lhs != rhs:
            failures.append(("forall-right", g, d, a1))

        lhs = consequence_fo([Exists("x", a1)] + g, d, sig, max_domain=2).holds
        rhs = consequence_fo([a1] + g, d, sig, max_domain=2).holds
        if lhs != rhs:
            failures.append(("exists-left", g, d, a1))
        checked += 2

    return {"checked": checked, "failures": failures}
