"""The four-valued matrix as a first-class object.

Everything here treats truth tables as data: regularity and classical
closure are decidable cell checks, the fifteen lattice laws are finite
schemas, and the uniqueness question ("which regular classically closed
matrices satisfy all fifteen?") is answered by staged enumeration over
the candidate pools rather than the raw 4^16-sized table space.

Binary tables are tuples of 16 values indexed by a1*4+a2; quantifier
tables are tuples of 15 values indexed over the nonempty subsets of the
value space by bitmask (bit i set means the value with index i is in
the subset).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .syntax import And, Falsity, Imp, Not, Or, Prop
from .values import (
    ALL_VALUES, B, CL_VALUES, DESIGNATED, F, N, NON_DESIGNATED, T, TruthValue,
    VALUES, designated, imp, inf, join, meet, neg, sup,
)

#: all nonempty subsets of the value space, ordered by bitmask
SUBSETS = tuple(
    frozenset(v for v in VALUES if mask >> int(v) & 1)
    for mask in range(1, 16)
)


def subset_index(values) -> int:
    mask = 0
    for v in values:
        mask |= 1 << int(v)
    if mask == 0:
        raise ValueError("quantifier tables have no entry for the empty set")
    return mask - 1


@dataclass(frozen=True)
class Matrix4:
    neg: tuple
    conj: tuple
    disj: tuple
    impl: tuple
    forall_q: tuple
    exists_q: tuple
    falsum: TruthValue

    def neg_of(self, a):
        return self.neg[a]

    def conj_of(self, a1, a2):
        return self.conj[a1 * 4 + a2]

    def disj_of(self, a1, a2):
        return self.disj[a1 * 4 + a2]

    def impl_of(self, a1, a2):
        return self.impl[a1 * 4 + a2]

    def forall_of(self, values):
        return self.forall_q[subset_index(values)]

    def exists_of(self, values):
        return self.exists_q[subset_index(values)]

    @property
    def truth(self) -> TruthValue:
        return self.neg[self.falsum]

    def packed(self) -> dict:
        """Base-4 integer encodings of the finite tables."""
        pack = lambda cells: sum(int(v) * 4 ** i for i, v in enumerate(cells))
        return {
            "neg": pack(self.neg), "conj": pack(self.conj),
            "disj": pack(self.disj), "impl": pack(self.impl),
            "forall": pack(self.forall_q), "exists": pack(self.exists_q),
            "falsum": int(self.falsum),
        }


BD_MATRIX = Matrix4(
    neg=tuple(neg(a) for a in VALUES),
    conj=tuple(meet(a1, a2) for a1 in VALUES for a2 in VALUES),
    disj=tuple(join(a1, a2) for a1 in VALUES for a2 in VALUES),
    impl=tuple(imp(a1, a2) for a1 in VALUES for a2 in VALUES),
    forall_q=tuple(inf(s) for s in SUBSETS),
    exists_q=tuple(sup(s) for s in SUBSETS),
    falsum=F,
)


# ---------------------------------------------------------------------------
# regularity and classical closure


def is_regular(m: Matrix4) -> bool:
    """Designation of every compound is fixed by designation of the parts.

    Negation designates exactly on {f, b}; conjunction needs both parts
    designated, disjunction one, implication follows the material
    condition, and the quantifiers mirror conjunction/disjunction over
    their value sets.  The falsity constant carries no condition here.
    """
    for a in VALUES:
        if designated(m.neg[a]) != (a in (F, B)):
            return False
    for a1 in VALUES:
        for a2 in VALUES:
            if designated(m.conj_of(a1, a2)) != (designated(a1) and designated(a2)):
                return False
            if designated(m.disj_of(a1, a2)) != (designated(a1) or designated(a2)):
                return False
            if designated(m.impl_of(a1, a2)) != ((not designated(a1)) or designated(a2)):
                return False
    for s in SUBSETS:
        if designated(m.forall_of(s)) != (s <= DESIGNATED):
            return False
        if designated(m.exists_of(s)) != bool(s & DESIGNATED):
            return False
    return True


def is_classically_closed(m: Matrix4) -> bool:
    """All operations map classical material back into {t, f}."""
    if m.falsum not in CL_VALUES:
        return False
    for a in (T, F):
        if m.neg[a] not in CL_VALUES:
            return False
    for a1 in (T, F):
        for a2 in (T, F):
            if m.conj_of(a1, a2) not in CL_VALUES:
                return False
            if m.disj_of(a1, a2) not in CL_VALUES:
                return False
            if m.impl_of(a1, a2) not in CL_VALUES:
                return False
    for s in (frozenset((T,)), frozenset((F,)), frozenset((T, F))):
        if m.forall_of(s) not in CL_VALUES:
            return False
        if m.exists_of(s) not in CL_VALUES:
            return False
    return True


# ---------------------------------------------------------------------------
# the fifteen laws as finite schemas

LAW_ARITY = {
    1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 2, 8: 2, 9: 2, 10: 2,
    11: 1, 12: 2, 13: 2, 14: None, 15: None,
}

LAW_TEXT = {
    1: "A & F == F",
    2: "A | T == T",
    3: "A & T == A",
    4: "A | F == A",
    5: "A & A == A",
    6: "A | A == A",
    7: "A1 & A2 == A2 & A1",
    8: "A1 | A2 == A2 | A1",
    9: "~(A1 & A2) == ~A1 | ~A2",
    10: "~(A1 | A2) == ~A1 & ~A2",
    11: "~~A == A",
    12: "(A1 & (A1 -> F)) -> A2 == T",
    13: "(A1 | (A1 -> F)) -> A2 == A2",
    14: "forall x. (A1 & A2) == (forall x. A1) & A2   [x not free in A2]",
    15: "exists x. (A1 | A2) == (exists x. A1) | A2   [x not free in A2]",
}

ALL_LAWS = tuple(range(1, 16))


def _prop_law_sides(m: Matrix4, law: int, vals):
    tt = m.truth
    ff = m.falsum
    if law == 1:
        (a,) = vals
        return m.conj_of(a, ff), ff
    if law == 2:
        (a,) = vals
        return m.disj_of(a, tt), tt
    if law == 3:
        (a,) = vals
        return m.conj_of(a, tt), a
    if law == 4:
        (a,) = vals
        return m.disj_of(a, ff), a
    if law == 5:
        (a,) = vals
        return m.conj_of(a, a), a
    if law == 6:
        (a,) = vals
        return m.disj_of(a, a), a
    if law == 7:
        a1, a2 = vals
        return m.conj_of(a1, a2), m.conj_of(a2, a1)
    if law == 8:
        a1, a2 = vals
        return m.disj_of(a1, a2), m.disj_of(a2, a1)
    if law == 9:
        a1, a2 = vals
        return m.neg[m.conj_of(a1, a2)], m.disj_of(m.neg[a1], m.neg[a2])
    if law == 10:
        a1, a2 = vals
        return m.neg[m.disj_of(a1, a2)], m.conj_of(m.neg[a1], m.neg[a2])
    if law == 11:
        (a,) = vals
        return m.neg[m.neg[a]], a
    if law == 12:
        a1, a2 = vals
        return m.impl_of(m.conj_of(a1, m.impl_of(a1, ff)), a2), tt
    if law == 13:
        a1, a2 = vals
        return m.impl_of(m.disj_of(a1, m.impl_of(a1, ff)), a2), a2
    raise ValueError("no such propositional law: %r" % (law,))


def check_law(m: Matrix4, law: int):
    """Does the matrix satisfy one law schema?

    Propositional laws range metavariables over the value space; the
    quantified laws (14, 15) range over every nonempty value set V for
    the quantified part and every value for the part the bound variable
    does not occur in, which covers all instances over all structures.
    Returns (True, None) or (False, witness).
    """
    if law in (14, 15):
        for s in SUBSETS:
            for a2 in VALUES:
                if law == 14:
                    lhs = m.forall_of(frozenset(m.conj_of(v, a2) for v in s))
                    rhs = m.conj_of(m.forall_of(s), a2)
                else:
                    lhs = m.exists_of(frozenset(m.disj_of(v, a2) for v in s))
                    rhs = m.disj_of(m.exists_of(s), a2)
                if lhs is not rhs:
                    return False, {"V": s, "A2": a2}
        return True, None
    arity = LAW_ARITY[law]
    for vals in itertools.product(VALUES, repeat=arity):
        lhs, rhs = _prop_law_sides(m, law, vals)
        if lhs is not rhs:
            names = ("A",) if arity == 1 else ("A1", "A2")
            return False, dict(zip(names, vals))
    return True, None


def check_all_laws(m: Matrix4, laws=ALL_LAWS):
    return {law: check_law(m, law) for law in laws}


# ---------------------------------------------------------------------------
# candidate enumeration

_FAMILIES = ("neg", "conj", "disj", "impl", "forall", "exists", "falsum")

_BINARY_CONDITIONS = {
    "conj": lambda a1, a2: designated(a1) and designated(a2),
    "disj": lambda a1, a2: designated(a1) or designated(a2),
    "impl": lambda a1, a2: (not designated(a1)) or designated(a2),
}


def _cell_pool(want_designated: bool, classical: bool):
    pool = DESIGNATED if want_designated else NON_DESIGNATED
    if classical:
        pool = pool & CL_VALUES
    return tuple(v for v in VALUES if v in pool)


def enumerate_candidates(family: str):
    """All tables for one operation that are regular and classically closed.

    The falsity constant has no regularity condition, so its pool is
    just the classical closure requirement.
    """
    if family == "falsum":
        return [T, F]
    if family == "neg":
        cells = [
            _cell_pool(a in (F, B), a in CL_VALUES) for a in VALUES
        ]
        return [tuple(c) for c in itertools.product(*cells)]
    if family in _BINARY_CONDITIONS:
        cond = _BINARY_CONDITIONS[family]
        cells = [
            _cell_pool(cond(a1, a2), a1 in CL_VALUES and a2 in CL_VALUES)
            for a1 in VALUES for a2 in VALUES
        ]
        return [tuple(c) for c in itertools.product(*cells)]
    if family in ("forall", "exists"):
        cells = []
        for s in SUBSETS:
            if family == "forall":
                want = s <= DESIGNATED
            else:
                want = bool(s & DESIGNATED)
            cells.append(_cell_pool(want, s <= CL_VALUES))
        return [tuple(c) for c in itertools.product(*cells)]
    raise ValueError("unknown table family: %r" % (family,))


def candidate_counts() -> dict:
    return {family: len(enumerate_candidates(family)) for family in _FAMILIES}


# ---------------------------------------------------------------------------
# staged uniqueness search


def _law_holds_tables(law, nu, ff, cj, dj, im, al, ex) -> bool:
    """Law check on raw tables, with only the tables the law needs."""
    m = Matrix4(
        neg=nu or BD_MATRIX.neg,
        conj=cj or BD_MATRIX.conj,
        disj=dj or BD_MATRIX.disj,
        impl=im or BD_MATRIX.impl,
        forall_q=al or BD_MATRIX.forall_q,
        exists_q=ex or BD_MATRIX.exists_q,
        falsum=ff if ff is not None else BD_MATRIX.falsum,
    )
    return check_law(m, law)[0]


@dataclass
class UniquenessReport:
    dropped: frozenset
    candidate_counts: dict
    stages: list
    survivor_count: int
    survivors: list | None

    def survivors_modulo_impl(self):
        """Distinct survivors after erasing the implication table."""
        if self.survivors is None:
            return None
        return {
            (s.neg, s.conj, s.disj, s.forall_q, s.exists_q, s.falsum)
            for s in self.survivors
        }


def uniqueness_search(dropped=(), cap: int = 1000) -> UniquenessReport:
    """Every regular classically closed matrix satisfying the active laws.

    ``dropped`` removes law identifiers from the requirement.  The
    search stages the laws by which tables they mention: negation and
    falsity first (laws that involve T go through both), then the
    lattice connectives, then implication and the quantifiers, whose
    pools multiply out per surviving context.  With the full law set
    the count comes out at 81: the fifteen laws pin every table except
    implication, whose pool retains 81 tables.

    Survivors are materialized only when the count fits under ``cap``.
    """
    active = frozenset(ALL_LAWS) - frozenset(dropped)
    counts = candidate_counts()
    stages = []

    negs = enumerate_candidates("neg")
    if 11 in active:
        negs = [nu for nu in negs if _law_holds_tables(11, nu, None, None, None, None, None, None)]
    stages.append(("negation tables after law 11", len(negs)))

    conj_all = enumerate_candidates("conj")
    disj_all = enumerate_candidates("disj")
    impl_all = enumerate_candidates("impl")
    forall_all = enumerate_candidates("forall")
    exists_all = enumerate_candidates("exists")

    conj_laws = tuple(l for l in (1, 3, 5, 7) if l in active)
    disj_laws = tuple(l for l in (2, 4, 6, 8) if l in active)
    joint_laws = tuple(l for l in (9, 10) if l in active)
    impl_laws = tuple(l for l in (12, 13) if l in active)

    forall_cache: dict = {}
    exists_cache: dict = {}
    impl_cache: dict = {}

    total = 0
    contexts = []
    for nu in negs:
        for ff in enumerate_candidates("falsum"):
            conj_pool = [
                cj for cj in conj_all
                if all(_law_holds_tables(l, nu, ff, cj, None, None, None, None)
                       for l in conj_laws)
            ]
            disj_pool = [
                dj for dj in disj_all
                if all(_law_holds_tables(l, nu, ff, None, dj, None, None, None)
                       for l in disj_laws)
            ]
            pairs = [
                (cj, dj) for cj in conj_pool for dj in disj_pool
                if all(_law_holds_tables(l, nu, ff, cj, dj, None, None, None)
                       for l in joint_laws)
            ]
            stages.append((
                "context neg=%s falsum=%s: conj %d, disj %d, joint pairs %d"
                % (tuple(v.letter for v in nu), ff.letter, len(conj_pool),
                   len(disj_pool), len(pairs)),
                len(pairs),
            ))
            for cj, dj in pairs:
                key = (nu, ff, cj, dj)
                impl_pool = impl_cache.get(key)
                if impl_pool is None:
                    impl_pool = [
                        im for im in impl_all
                        if all(_law_holds_tables(l, nu, ff, cj, dj, im, None, None)
                               for l in impl_laws)
                    ]
                    impl_cache[key] = impl_pool
                if 14 in active:
                    forall_pool = forall_cache.get(cj)
                    if forall_pool is None:
                        forall_pool = [
                            al for al in forall_all
                            if _law_holds_tables(14, nu, ff, cj, dj, None, al, None)
                        ]
                        forall_cache[cj] = forall_pool
                else:
                    forall_pool = forall_all
                if 15 in active:
                    exists_pool = exists_cache.get(dj)
                    if exists_pool is None:
                        exists_pool = [
                            ex for ex in exists_all
                            if _law_holds_tables(15, nu, ff, cj, dj, None, None, ex)
                        ]
                        exists_cache[dj] = exists_pool
                else:
                    exists_pool = exists_all
                n = len(impl_pool) * len(forall_pool) * len(exists_pool)
                total += n
                if n:
                    contexts.append((nu, ff, cj, dj, impl_pool, forall_pool, exists_pool))

    survivors = None
    if total <= cap:
        survivors = []
        for nu, ff, cj, dj, impl_pool, forall_pool, exists_pool in contexts:
            for im in impl_pool:
                for al in forall_pool:
                    for ex in exists_pool:
                        survivors.append(Matrix4(
                            neg=nu, conj=cj, disj=dj, impl=im,
                            forall_q=al, exists_q=ex, falsum=ff,
                        ))
    return UniquenessReport(
        dropped=frozenset(dropped), candidate_counts=counts, stages=stages,
        survivor_count=total, survivors=survivors,
    )


# ---------------------------------------------------------------------------
# evaluation inside an arbitrary candidate matrix


def evaluate_prop_in(m: Matrix4, a, valuation: dict) -> TruthValue:
    """Propositional evaluation with the given tables instead of the
    standard ones.  Used to exhibit behavioral differences between
    law-satisfying matrices."""
    match a:
        case Prop(name):
            return valuation[name]
        case Falsity():
            return m.falsum
        case Not(b):
            return m.neg[evaluate_prop_in(m, b, valuation)]
        case And(l, r):
            return m.conj_of(evaluate_prop_in(m, l, valuation),
                             evaluate_prop_in(m, r, valuation))
        case Or(l, r):
            return m.disj_of(evaluate_prop_in(m, l, valuation),
                             evaluate_prop_in(m, r, valuation))
        case Imp(l, r):
            return m.impl_of(evaluate_prop_in(m, l, valuation),
                             evaluate_prop_in(m, r, valuation))
    raise ValueError("unsupported formula for table evaluation: %s" % (a,))


def consequence_prop_in(m: Matrix4, gamma, delta, atoms=None):
    """Propositional consequence computed over the given matrix."""
    gamma, delta = list(gamma), list(delta)
    if atoms is None:
        names = set()
        for a in gamma + delta:
            for name in _prop_names(a):
                names.add(name)
        atoms = tuple(sorted(names))
    for combo in itertools.product(VALUES, repeat=len(atoms)):
        v = dict(zip(atoms, combo))
        if all(designated(evaluate_prop_in(m, g, v)) for g in gamma) and not any(
            designated(evaluate_prop_in(m, d, v)) for d in delta
        ):
            return False, v
    return True, None


def _prop_names(a):
    match a:
        case Prop(name):
            yield name
        case Not(b):
            yield from _prop_names(b)
        case And(l, r) | Or(l, r) | Imp(l, r):
            yield from _prop_names(l)
            yield from _prop_names(r)


# ---------------------------------------------------------------------------
# classical laws that the four-valued matrix rejects

CLASSICAL_LAWS = (
    ("negation as implication to falsity", "~A == A -> F",
     lambda m, a: (m.neg[a], m.impl_of(a, m.falsum))),
    ("contradiction collapses to falsity", "A & ~A == F",
     lambda m, a: (m.conj_of(a, m.neg[a]), m.falsum)),
    ("excluded middle collapses to truth", "A | ~A == T",
     lambda m, a: (m.disj_of(a, m.neg[a]), m.truth)),
    ("falsity implies everything", "F -> A == T",
     lambda m, a: (m.impl_of(m.falsum, a), m.truth)),
    ("true antecedent drops", "T -> A == A",
     lambda m, a: (m.impl_of(m.truth, a), a)),
)


def check_classical_laws(m: Matrix4 = BD_MATRIX):
    """Status of five classical equivalences on the matrix.

    Returns a list of (name, text, holds, witness) tuples; the witness
    is the metavariable value separating the sides when the law fails.
    """
    out = []
    for name, text, sides in CLASSICAL_LAWS:
        holds, witness = True, None
        for a in VALUES:
            lhs, rhs = sides(m, a)
            if lhs is not rhs:
                holds, witness = False, {"A": a}
                break
        out.append((name, text, holds, witness))
    return out
