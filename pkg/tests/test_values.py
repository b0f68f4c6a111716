"""Tables for the four truth values and the lattice they form."""

import pytest

from bd4.values import (
    ALL_VALUES, B, CL_VALUES, DESIGNATED, F, K3_VALUES, LP_VALUES, N, T,
    VALUES, designated, imp, inf, join, leq, meet, neg, sup,
)


def test_value_order_and_letters():
    assert [v.letter for v in VALUES] == ["T", "B", "N", "F"]
    assert [int(v) for v in VALUES] == [0, 1, 2, 3]


def test_designated_set():
    assert DESIGNATED == {T, B}
    assert designated(T) and designated(B)
    assert not designated(N) and not designated(F)


def test_lattice_order():
    # f < b < t and f < n < t, with b and n incomparable
    assert leq(F, B) and leq(B, T)
    assert leq(F, N) and leq(N, T)
    assert not leq(B, N) and not leq(N, B)
    for v in VALUES:
        assert leq(F, v) and leq(v, T) and leq(v, v)


def test_meet_and_join_tables():
    assert meet(B, N) == F
    assert join(B, N) == T
    assert meet(T, N) == N and meet(T, B) == B
    assert join(F, N) == N and join(F, B) == B
    for a in VALUES:
        assert meet(a, a) == a and join(a, a) == a
        for b in VALUES:
            assert meet(a, b) == meet(b, a)
            assert join(a, b) == join(b, a)


def test_inf_sup_against_pairwise():
    vals = [T, B, N]
    assert inf(vals) == meet(meet(T, B), N)
    assert sup([B, N]) == T
    assert inf([B]) == B
    with pytest.raises(ValueError):
        inf([])
    with pytest.raises(ValueError):
        sup([])


def test_negation_table():
    assert neg(T) == F and neg(F) == T
    assert neg(B) == B and neg(N) == N
    for v in VALUES:
        assert neg(neg(v)) == v


def test_implication_table():
    """t on an undesignated antecedent, else the consequent."""
    for a in VALUES:
        for b in VALUES:
            expected = T if not designated(a) else b
            assert imp(a, b) == expected


def test_restricted_value_sets():
    assert LP_VALUES == {T, B, F}
    assert K3_VALUES == {T, N, F}
    assert CL_VALUES == {T, F}
    assert ALL_VALUES == set(VALUES)
    # each restriction is closed under every operation
    for vals in (LP_VALUES, K3_VALUES, CL_VALUES):
        for a in vals:
            assert neg(a) in vals
            for b in vals:
                assert meet(a, b) in vals
                assert join(a, b) in vals
                assert imp(a, b) in vals
