"""Formula construction, printing, free variables, substitution."""

import pytest

from bd4.syntax import (
    And, Eq, Exists, ExtApp, Falsity, Forall, Fun, Imp, Not, Or, Pred, Prop,
    Sequent, Signature, SyntaxBuildError, TRUTH, Var, atomic_subformulas,
    formula_key, free_vars, fresh_var, is_literal, is_propositional,
    print_formula, print_term, prop_atoms, prop_signature, subformulas,
    substitute, substitute_term,
)

x, y, z = Var("x"), Var("y"), Var("z")
c = Fun("c")
P = lambda t: Pred("P", (t,))
p, q = Prop("p"), Prop("q")


def test_signature_guards():
    sig = Signature((("f", 2), ("c", 0)), (("P", 1), ("p", 0)))
    assert sig.function_arity("f") == 2
    assert sig.predicate_arity("P") == 1
    assert sig.constants == ("c",)
    assert sig.propositions == ("p",)
    with pytest.raises(SyntaxBuildError):
        Signature((("f", 1), ("f", 2)), ())
    with pytest.raises(SyntaxBuildError):
        Signature((("f", -1),), ())
    with pytest.raises(SyntaxBuildError):
        prop_signature("p", extras=("NoSuchConn",))


def test_truth_abbreviation():
    assert TRUTH == Not(Falsity())


def test_printing():
    assert print_formula(Imp(p, Or(q, Not(p)))) == "p -> q | ~p"
    assert print_formula(And(Or(p, q), q)) == "(p | q) & q"
    assert print_formula(Forall("x", Imp(P(x), Exists("y", Eq(x, y))))) == \
        "forall x. P(x) -> (exists y. x = y)"
    assert print_term(Fun("f", (c, x))) == "f(c, x)"
    assert print_formula(Not(Eq(x, y))) == "~x = y"
    assert print_formula(ExtApp("Des", (p,))) == "Des p"


def test_free_vars():
    a = Forall("x", Imp(P(x), P(y)))
    assert free_vars(a) == {"y"}
    assert free_vars(Exists("y", a)) == set()
    assert free_vars(Eq(Fun("f", (x, c)), y)) == {"x", "y"}


def test_fresh_var_avoids_taken_names():
    got = fresh_var("x", {"x", "x1"})
    assert got not in {"x", "x1"}


def test_substitute_term():
    t = Fun("f", (x, Fun("g", (y,))))
    assert substitute_term(t, "y", c) == Fun("f", (x, Fun("g", (c,))))


def test_substitution_basic():
    a = Imp(P(x), Exists("z", Eq(x, z)))
    got = substitute(a, "x", c)
    assert got == Imp(P(c), Exists("z", Eq(c, z)))


def test_substitution_is_capture_avoiding():
    # [x := y] (forall y. P(x) & P(y)) must rename the bound y
    a = Forall("y", And(P(x), P(y)))
    got = substitute(a, "x", y)
    assert isinstance(got, Forall)
    assert got.var != "y"
    inner = got.body
    assert inner == And(P(y), P(Var(got.var)))


def test_substitution_skips_shadowed_occurrences():
    a = Forall("x", P(x))
    assert substitute(a, "x", c) == a


def test_subformulas_and_atoms():
    a = Imp(And(p, Not(q)), Falsity())
    subs = set(subformulas(a))
    assert p in subs and Not(q) in subs and Falsity() in subs and a in subs
    assert atomic_subformulas([a]) == {p, q, Falsity()}
    assert prop_atoms(a) == {"p", "q"}


def test_literals():
    assert is_literal(p) and is_literal(Not(p))
    assert is_literal(Eq(x, y)) and is_literal(Falsity())
    assert not is_literal(And(p, q)) and not is_literal(Not(Not(p)))


def test_is_propositional():
    assert is_propositional(Imp(p, And(q, Falsity())))
    assert not is_propositional(P(c))
    assert not is_propositional(Forall("x", p))


def test_sequent_sets_and_str():
    s = Sequent.of([p, p], [q, Falsity()])
    assert s.ant == frozenset({p})
    assert len(s.suc) == 2
    assert str(Sequent.of([p], [q])) == "|- p => q"


def test_formula_key_is_total_order():
    forms = [p, q, Not(p), And(p, q), Or(p, q), Falsity(), Imp(q, p)]
    keys = sorted(forms, key=formula_key)
    assert len(set(map(formula_key, forms))) == len(forms)
    assert sorted(keys, key=formula_key) == keys


def test_extapp_guards():
    with pytest.raises(SyntaxBuildError):
        ExtApp("NoSuchConn", (p,))
    with pytest.raises(SyntaxBuildError):
        ExtApp("Des", ())
