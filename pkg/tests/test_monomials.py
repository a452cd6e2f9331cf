from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gotzmann.monomials import (
    DEGREVLEX,
    LEX,
    TermOrder,
    WeightVector,
    borel_covers,
    borel_leq,
    borel_lower_covers,
    borel_up_set,
    compare,
    count_monomials,
    max_var,
    min_var,
    monomials_of_degree,
    mul,
)
from oracles import all_monomials, borel_reachable

x2y, xy2 = (2, 1, 0), (1, 2, 0)
W5210 = TermOrder("weighted", WeightVector((5, 2, 1, 0)))


def test_lex_compare():
    assert compare(x2y, xy2, LEX) == 1
    assert compare(xy2, x2y, LEX) == -1
    assert compare(x2y, x2y, LEX) == 0


def test_weighted_compare_by_weight():
    # x^2*w has weight 10, x*y^2 weight 9
    assert W5210.weight.weight((2, 0, 0, 1)) == 10
    assert W5210.weight.weight((1, 2, 0, 0)) == 9
    assert W5210.compare((2, 0, 0, 1), (1, 2, 0, 0)) == 1


def test_weighted_tie_goes_to_tiebreak():
    xyw, xz2 = (1, 1, 0, 1), (1, 0, 2, 0)
    assert W5210.weight.weight(xyw) == W5210.weight.weight(xz2) == 7
    assert W5210.compare(xyw, xz2) == DEGREVLEX.compare(xyw, xz2)
    lexed = TermOrder("weighted", WeightVector((5, 2, 1, 0)), "lex")
    assert lexed.compare(xyw, xz2) == LEX.compare(xyw, xz2)


def test_compare_ring_mismatch():
    with pytest.raises(ValueError):
        compare((1, 0), (1, 0, 0), LEX)
    with pytest.raises(ValueError):
        W5210.compare((1, 0, 0), (0, 1, 0))


def test_degrevlex_known_pairs():
    # x*z^2 < y^3 in degrevlex, the reverse under lex
    assert DEGREVLEX.compare((1, 0, 2), (0, 3, 0)) == -1
    assert LEX.compare((1, 0, 2), (0, 3, 0)) == 1


def test_monomials_of_degree_examples():
    assert monomials_of_degree(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(monomials_of_degree(3, 3)) == 10
    assert len(monomials_of_degree(4, 3)) == 20
    assert monomials_of_degree(3, 0) == [(0, 0, 0)]
    with pytest.raises(ValueError):
        monomials_of_degree(3, -1)


@pytest.mark.parametrize("order", [LEX, DEGREVLEX, W5210])
def test_monomials_of_degree_descending(order):
    mons = monomials_of_degree(4, 3, order)
    assert sorted(mons) == sorted(all_monomials(4, 3))
    assert all(order.compare(a, b) == 1 for a, b in zip(mons, mons[1:]))
    assert count_monomials(4, 3) == 20


def test_order_parse_roundtrip():
    for text in ["lex", "degrevlex", "weight:5,2,1,0:degrevlex", "weight:1/2,1/3,0:lex"]:
        assert str(TermOrder.parse(text)) == text
        assert TermOrder.parse(str(TermOrder.parse(text))) == TermOrder.parse(text)
    with pytest.raises(ValueError):
        TermOrder.parse("grlex")


def test_weight_vector_helpers():
    w = WeightVector((Fraction(1, 2), Fraction(1, 3), 0))
    assert w.integral == (3, 2, 0) and w.scale == 6
    assert w.weight((1, 1, 0)) == Fraction(5, 6)
    assert WeightVector((4, 2, 0)).normalized().weights == (2, 1, 0)
    assert w.is_non_increasing() and not WeightVector((0, 1)).is_non_increasing()


def test_var_extremes():
    assert max_var((1, 0, 2)) == 2 and min_var((1, 0, 2)) == 0
    assert max_var((0, 0, 0)) == -1 and min_var((0, 0, 0)) == 3


def test_borel_examples():
    assert borel_leq((1, 1, 0), (1, 1, 0))
    assert borel_leq((1, 1, 0), (2, 0, 0))
    assert not borel_leq((0, 2, 0), (1, 0, 1))
    assert not borel_leq((1, 0, 1), (0, 2, 0))
    assert borel_covers((3, 0, 0)) == []
    assert set(borel_covers((0, 1, 1))) == {(1, 0, 1), (0, 2, 0)}
    assert borel_covers((0, 0, 2)) == [(0, 1, 1)]
    with pytest.raises(ValueError):
        borel_leq((1, 0), (1, 1))


@pytest.mark.parametrize("nvars,d", [(n, d) for n in range(1, 5) for d in range(6)])
def test_borel_leq_matches_bfs(nvars, d):
    mons = all_monomials(nvars, d)
    for a in mons:
        reach = borel_reachable(a)
        assert borel_up_set(a) == reach
        for b in mons:
            assert borel_leq(a, b) == (b in reach)


@pytest.mark.parametrize("nvars,d", [(n, d) for n in range(1, 5) for d in range(5)])
@pytest.mark.parametrize("order", [LEX, DEGREVLEX])
def test_orders_refine_borel(nvars, d, order):
    mons = all_monomials(nvars, d)
    for a, b in product(mons, mons):
        if a != b and borel_leq(a, b):
            assert order.compare(a, b) == -1


def test_lower_covers_invert_covers():
    for a in all_monomials(3, 3):
        for b in borel_covers(a):
            assert a in borel_lower_covers(b)


mono3 = st.tuples(*[st.integers(0, 4)] * 3)
weights3 = st.tuples(*[st.fractions(min_value=0, max_value=5, max_denominator=4)] * 3)


@settings(max_examples=200, deadline=None)
@given(mono3, mono3, mono3, weights3, st.sampled_from(["lex", "degrevlex"]))
def test_multiplicative(a, b, c, w, tb):
    orders = [LEX, DEGREVLEX, TermOrder("weighted", WeightVector(w), tb)]
    for o in orders:
        assert o.compare(a, b) == o.compare(mul(a, c), mul(b, c))
        assert o.compare(a, b) == -o.compare(b, a)
