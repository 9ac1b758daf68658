from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from kcomplete.errors import SingularError
from kcomplete.incidence import (
    FinitePoset,
    IntervalFunction,
    enumerate_chains,
    invert,
    invert_via_chains,
)
from kcomplete.polynomial import RationalFunction

CHAIN2 = FinitePoset([[1, 1], [0, 1]])
DIAMOND = FinitePoset([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]])


def closure(rel):
    n = len(rel)
    r = [row[:] for row in rel]
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    return r


@st.composite
def posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    perm = draw(st.permutations(range(n)))
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                rel[i][j] = True
    rel = closure(rel)
    # relabel so the index order is not a linear extension
    out = [[rel[perm[a]][perm[b]] for b in range(n)] for a in range(n)]
    return FinitePoset(out)


nonzero_fracs = st.fractions(min_value=-10, max_value=10, max_denominator=12).filter(lambda x: x != 0)
fracs = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@st.composite
def interval_functions(draw):
    P = draw(posets())
    values = {}
    for a, b in P.intervals():
        values[(a, b)] = draw(nonzero_fracs) if a == b else draw(fracs)
    return IntervalFunction(P, values, Fraction(0))


def test_invert_two_chain():
    f = IntervalFunction(CHAIN2, {(0, 0): Fraction(2), (1, 1): Fraction(3), (0, 1): Fraction(1)})
    g = invert(f)
    assert (g(0, 0), g(1, 1), g(0, 1)) == (Fraction(1, 2), Fraction(1, 3), Fraction(-1, 6))
    assert invert_via_chains(f, 0, 1) == Fraction(-1, 6)
    assert invert_via_chains(f, 1, 1) == Fraction(1, 3)


def test_invert_antichain_and_identity():
    P = FinitePoset([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    f = IntervalFunction(P, {(0, 0): Fraction(2), (1, 1): Fraction(5), (2, 2): Fraction(-7)})
    g = invert(f)
    assert [g(a, a) for a in range(3)] == [Fraction(1, 2), Fraction(1, 5), Fraction(-1, 7)]
    delta = IntervalFunction.delta(DIAMOND, Fraction(1), Fraction(0))
    assert invert(delta) == delta


def test_diamond_all_ones():
    f = IntervalFunction.from_callable(DIAMOND, lambda a, b: Fraction(1), Fraction(0))
    # chains bottom->top: one direct (-1), two through a middle (+1 each)
    assert invert_via_chains(f, 0, 3) == invert(f)(0, 3) == 1


def test_singular_error_names_element():
    f = IntervalFunction(CHAIN2, {(0, 0): Fraction(2), (1, 1): Fraction(0), (0, 1): Fraction(1)})
    with pytest.raises(SingularError) as exc:
        invert(f)
    assert exc.value.element == 1


def test_enumerate_chains_counts():
    assert sorted(enumerate_chains(CHAIN2)) == [(0,), (0, 1), (1,)]
    chains = enumerate_chains(DIAMOND)
    assert len(chains) == 11
    assert [len(c) for c in chains].count(1) == 4
    assert [len(c) for c in chains].count(2) == 5
    assert [len(c) for c in chains].count(3) == 2
    assert enumerate_chains(DIAMOND, 3, 3) == [(3,)]
    assert sorted(enumerate_chains(DIAMOND, 0, 3)) == [(0, 1, 3), (0, 2, 3), (0, 3)]


def test_hasse_edges():
    assert sorted(DIAMOND.cover_relations()) == [(0, 1), (0, 2), (1, 3), (2, 3)]


@settings(max_examples=150, deadline=None)
@given(interval_functions())
def test_chain_inverse_equals_triangular_inverse(f):
    g = invert(f)
    for a, b in f.poset.intervals():
        assert invert_via_chains(f, a, b) == g(a, b)


@settings(max_examples=150, deadline=None)
@given(interval_functions())
def test_inverse_is_two_sided_and_involutive(f):
    g = invert(f)
    delta = IntervalFunction.delta(f.poset, Fraction(1), Fraction(0))
    assert f * g == delta
    assert g * f == delta
    assert invert(g) == f


@settings(max_examples=150, deadline=None)
@given(posets())
def test_linear_extension_respects_order(P):
    pos = {a: i for i, a in enumerate(P.linear_extension)}
    assert P.is_partial_order()
    for a, b in P.intervals():
        assert pos[a] <= pos[b]


def test_rational_function_scalars():
    t = RationalFunction.t()
    f = IntervalFunction(DIAMOND, {
        (0, 0): t + 1, (1, 1): t + 2, (2, 2): t + 3, (3, 3): t + 4,
        (0, 1): RationalFunction.const(1), (0, 2): t, (1, 3): RationalFunction.const(2),
        (2, 3): RationalFunction.const(1), (0, 3): t * t,
    }, RationalFunction.const(0))
    g = invert(f)
    assert f * g == IntervalFunction.delta(DIAMOND, RationalFunction.const(1), RationalFunction.const(0))
    for a, b in DIAMOND.intervals():
        assert invert_via_chains(f, a, b) == g(a, b)
    # specialising t commutes with inversion
    f2 = IntervalFunction.from_callable(DIAMOND, lambda a, b: f(a, b)(Fraction(5)), Fraction(0))
    g2 = invert(f2)
    assert all(g(a, b)(Fraction(5)) == g2(a, b) for a, b in DIAMOND.intervals())
