"""Text formats: signatures, structures, derivation files."""

import pytest

from bd4.kernel import Derivation, DerivationStep, check_derivation
from bd4.proofio import (
    ProofIOError, parse_derivation, parse_signature, parse_structure,
    print_derivation, print_sequent, print_signature, print_structure,
)
from bd4.semantics import Structure, evaluate
from bd4.syntax import (
    And, Eq, Falsity, Forall, Fun, Not, Pred, Prop, Sequent, Var,
)
from bd4.values import B, F, N, T

SIG_TEXT = """\
# toy signature
const c
func f/1
pred P/1
prop p
prop q
conn Des
"""


def test_signature_round_trip():
    sig = parse_signature(SIG_TEXT)
    assert ("c", 0) in sig.functions and ("f", 1) in sig.functions
    assert ("P", 1) in sig.predicates and ("p", 0) in sig.predicates
    assert "Des" in sig.extras
    printed = print_signature(sig)
    assert parse_signature(printed) == sig
    # canonical print is a fixpoint
    assert print_signature(parse_signature(printed)) == printed


def test_signature_errors():
    with pytest.raises(ProofIOError):
        parse_signature("func f/one\n")
    with pytest.raises(ProofIOError):
        parse_signature("blorp c\n")
    with pytest.raises(ProofIOError):
        parse_signature("conn Zap\n")


STRUCT_TEXT = """\
domain d1 d2
const c = d1
func f d1 -> d2
func f d2 -> d2
pred P d1 = B
pred P d2 = T
pred p = N
pred q = F
eq d1 d2 = F
"""


def test_structure_round_trip():
    sig = parse_signature(SIG_TEXT)
    s = parse_structure(STRUCT_TEXT, sig)
    assert s.domain == ("d1", "d2")
    assert s.consts["c"] == "d1"
    assert s.funcs["f"][("d1",)] == "d2"
    assert s.preds["P"][("d1",)] == B
    assert s.props["p"] == N
    assert s.eq[("d1", "d1")] == T  # diagonal defaulted
    assert s.eq[("d1", "d2")] == F
    printed = print_structure(s)
    assert print_structure(parse_structure(printed, sig)) == printed


def test_structure_drives_evaluation():
    sig = parse_signature(SIG_TEXT)
    s = parse_structure(STRUCT_TEXT, sig)
    x = Var("x")
    assert evaluate(Forall("x", Pred("P", (x,))), s, {}) == B
    assert evaluate(Eq(Fun("c"), Fun("c")), s, {}) == T


def test_partial_structure_text():
    sig = parse_signature("const c\npred P/1\n")
    s = parse_structure(
        "domain d1 d2\nbottom d2\nconst c = d1\n"
        "pred P d1 = T\npred P d2 = N\n", sig)
    assert s.bottom == "d2"
    assert s.eq[("d1", "d2")] == N  # bottom forces N on its row and column
    assert s.eq[("d2", "d2")] == N
    assert "bottom d2" in print_structure(s)
    # interpretations must be total, bottom rows included
    with pytest.raises(ProofIOError):
        parse_structure(
            "domain d1 d2\nbottom d2\nconst c = d1\npred P d1 = T\n", sig)


def test_structure_errors():
    sig = parse_signature(SIG_TEXT)
    with pytest.raises(ProofIOError):
        parse_structure("const c = d1\ndomain d1\n", sig)  # domain not first
    with pytest.raises(ProofIOError):
        parse_structure("domain d1\nconst c = d9\n", sig)
    with pytest.raises(ProofIOError):
        parse_structure("domain d1\npred P d1 = X\n", sig)


DERIV_TEXT = """\
packs: base
# identity under a conjunction
0: Id principal="p" |- p ; q => p
1: and-L premises=[0] principal="p & q" |- p & q => p
"""


def test_derivation_round_trip_and_check():
    sig = parse_signature(SIG_TEXT)
    d = parse_derivation(DERIV_TEXT, sig)
    assert len(d.steps) == 2
    assert d.packs == frozenset()
    good, v = check_derivation(d)
    assert good, v
    printed = print_derivation(d)
    assert printed.startswith("packs: base\n")
    assert parse_derivation(printed, sig) == d
    assert print_derivation(parse_derivation(printed, sig)) == printed


def test_derivation_with_packs_and_hypothesis():
    sig = parse_signature(SIG_TEXT)
    text = (
        "packs: notLR\n"
        "hypothesis: |- p => \n"
        "0: hypothesis |- p =>\n"
    )
    d = parse_derivation(text, sig)
    assert d.packs == frozenset({"notLR"})
    assert d.hypotheses == (Sequent.of([Prop("p")], []),)
    good, v = check_derivation(d)
    assert good, v


def test_derivation_term_fields_round_trip():
    sig = parse_signature(SIG_TEXT)
    c = Fun("c")
    steps = (
        DerivationStep("Id", Sequent.of([Eq(c, c)], [Eq(c, c)]),
                       principal=Eq(c, c)),
        DerivationStep("eq-Refl", Sequent.of([], [Eq(c, c)]),
                       premises=(0,), t=c),
    )
    d = Derivation(steps)
    printed = print_derivation(d)
    assert 't="c"' in printed
    assert parse_derivation(printed, sig) == d


def test_derivation_errors():
    sig = parse_signature(SIG_TEXT)
    with pytest.raises(ProofIOError):
        parse_derivation("packs: base\n1: Id principal=\"p\" |- p => p\n",
                         sig)  # indices must start at 0
    with pytest.raises(ProofIOError):
        parse_derivation("packs: base\n0: Zap |- p => p\n", sig)
    with pytest.raises(ProofIOError):
        parse_derivation("packs: zap\n0: Id principal=\"p\" |- p => p\n",
                         sig)
    with pytest.raises(ProofIOError):
        parse_derivation("packs: base\n0: Id principal=\"p\" p => p\n", sig)


def test_print_sequent_shape():
    s = Sequent.of([Prop("p"), And(Prop("p"), Prop("q"))], [Falsity()])
    assert print_sequent(s) == "|- p; p & q => F"
    assert print_sequent(Sequent.of([], [])) == "|-  => "
