from fractions import Fraction
from itertools import combinations
import random

import pytest

from kcomplete.cover_lattice import (
    Cover,
    build_lattice,
    enumerate_covers,
    intersection_rate,
    join_cover,
    leq,
    meet_cover,
    rectangle_of,
)
from kcomplete.errors import HypothesisError, InvalidInstance
from kcomplete.instances import random_instances
from kcomplete.matrix_model import MatrixSpec, forced_rows, zero_positions

from conftest import Z, diamond_3x3, generic_2x2, unit_2x2


def C(rows=(), cols=()):
    return Cover(frozenset(rows), frozenset(cols))


def brute_covers(M):
    lines = [("r", i) for i in range(M.m)] + [("c", j) for j in range(M.n)]
    zeros = zero_positions(M)
    out = set()
    for chosen in combinations(lines, M.k - 1):
        cover = C([i for t, i in chosen if t == "r"], [j for t, j in chosen if t == "c"])
        if cover.covers(zeros):
            out.add(cover)
    return out


def test_enumerate_covers_examples():
    assert enumerate_covers(unit_2x2()) == [C(rows=[0]), C(cols=[0])]
    diamond = set(enumerate_covers(diamond_3x3()))
    assert diamond == {C([0, 1]), C([0], [1]), C([1], [0]), C([], [0, 1])} == brute_covers(diamond_3x3())
    k1 = MatrixSpec.from_grid([[1, 2], [3, 4]], 1)
    assert enumerate_covers(k1) == [C()]


def test_enumerate_covers_rejects_other_classes():
    with pytest.raises(HypothesisError):
        enumerate_covers(MatrixSpec.from_grid([[Z, 1], [1, Z]], 2))


def test_rectangle_of_examples():
    R = rectangle_of(unit_2x2(), C(rows=[0]))
    assert (R.rowset, R.colset, R.rate) == ({1}, {0, 1}, 2)
    R = rectangle_of(unit_2x2(), C(cols=[0]))
    assert (R.rowset, R.colset, R.rate) == ({0, 1}, {1}, 2)
    assert rectangle_of(generic_2x2(), C(rows=[0])).rate == 5
    with pytest.raises(InvalidInstance):
        rectangle_of(unit_2x2(), C(rows=[1]))


def test_leq_examples():
    assert leq(C(rows=[0]), C(cols=[0]))
    assert not leq(C(cols=[0]), C(rows=[0]))
    a, b = C([0], [1]), C([1], [0])
    assert not leq(a, b) and not leq(b, a)
    assert leq(a, a)


def test_intersection_rate_examples():
    for M, expected in ((unit_2x2(), 1), (generic_2x2(), 3)):
        a, b = rectangle_of(M, C(rows=[0])), rectangle_of(M, C(cols=[0]))
        assert intersection_rate(M, a, b) == expected
        assert intersection_rate(M, a, a) == a.rate


def test_build_lattice_chain_and_diamond():
    L = build_lattice(unit_2x2())
    assert len(L) == 2
    assert L.elements[L.bottom].cover == C(rows=[0])
    assert L.elements[L.top].cover == C(cols=[0])

    D = build_lattice(diamond_3x3())
    rates = {el.cover: el.rate for el in D.elements}
    assert rates == {C([0, 1]): 3, C([0], [1]): 4, C([1], [0]): 4, C([], [0, 1]): 3}
    assert D.elements[D.bottom].cover == C([0, 1])
    assert D.elements[D.top].cover == C([], [0, 1])
    assert len(D.hasse_edges()) == 4

    single = build_lattice(MatrixSpec.from_grid([[1, 2], [3, 4]], 1))
    assert len(single) == 1 and single.rate(0) == 10


@pytest.mark.parametrize("seed", range(4))
def test_lattice_properties_on_random_instances(seed):
    for M in random_instances(40, seed):
        L = build_lattice(M)
        covers = {el.cover for el in L.elements}
        assert covers == brute_covers(M)
        assert L.poset.is_partial_order()
        # element order is a linear extension
        assert all(a <= b for a in range(len(L)) for b in range(len(L)) if L.leq(a, b))
        assert all(meet_cover(a, b) in covers and join_cover(a, b) in covers for a in covers for b in covers)
        assert L.elements[L.top].cover.rows == forced_rows(M)
        assert all(el.rate > 0 for el in L.elements)
        for el in L.elements:
            assert el.cover.size() == M.k - 1
