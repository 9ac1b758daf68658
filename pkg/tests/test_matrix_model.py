from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from kcomplete.errors import HypothesisError, InvalidInstance
from kcomplete.matrix_model import (
    ZERO,
    Hypothesis,
    MatrixSpec,
    as_rate,
    avoidable_rows,
    forced_rows,
    hypothesis_class,
    insert_zero,
    max_zero_matching,
    rate_sum,
    remove_row,
    zero_positions,
)

Z = "zero"


def brute_matching_size(zeros):
    zeros = sorted(zeros)
    for size in range(len(zeros), 0, -1):
        for subset in combinations(zeros, size):
            if len({i for i, _ in subset}) == size and len({j for _, j in subset}) == size:
                return size
    return 0


def brute_covers(M):
    """Every set of k-1 lines covering the zeros, by enumerating all line subsets."""
    lines = [("r", i) for i in range(M.m)] + [("c", j) for j in range(M.n)]
    zeros = zero_positions(M)
    out = []
    for chosen in combinations(lines, M.k - 1):
        rows = {i for kind, i in chosen if kind == "r"}
        cols = {j for kind, j in chosen if kind == "c"}
        if all(i in rows or j in cols for i, j in zeros):
            out.append((frozenset(rows), frozenset(cols)))
    return out


@st.composite
def zero_patterns(draw, max_dim=5):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    cells = draw(st.lists(st.booleans(), min_size=m * n, max_size=m * n))
    grid = [[Z if cells[i * n + j] else 1 for j in range(n)] for i in range(m)]
    return grid


def test_zero_positions():
    assert zero_positions(MatrixSpec.from_grid([[Z, 1], [1, 1]], 1)) == {(0, 0)}
    assert zero_positions(MatrixSpec.from_grid([[1] * 3] * 3, 1)) == frozenset()
    assert zero_positions(MatrixSpec.from_grid([[Z, 1, 1], [1, Z, 1], [1, 1, 1]], 1)) == {(0, 0), (1, 1)}


def test_max_zero_matching_examples():
    assert len(max_zero_matching(MatrixSpec.from_grid([[Z, 1], [1, 1]], 1))) == 1
    assert len(max_zero_matching(MatrixSpec.from_grid([[Z, Z], [1, 1]], 1))) == 1
    M = MatrixSpec.from_grid([[Z, 1, 1], [1, Z, 1], [Z, 1, 1]], 1)
    matching = max_zero_matching(M)
    assert len(matching) == brute_matching_size(zero_positions(M)) == 2
    assert len({i for i, _ in matching}) == len({j for _, j in matching}) == 2


def test_hypothesis_class_examples():
    assert hypothesis_class(MatrixSpec.from_grid([[Z, 1], [1, 1]], 2)) is Hypothesis.EXACTLY_K_MINUS_1
    assert hypothesis_class(MatrixSpec.from_grid([[1, 1], [1, 1]], 1)) is Hypothesis.EXACTLY_K_MINUS_1
    assert hypothesis_class(MatrixSpec.from_grid([[Z, 1], [1, Z]], 2)) is Hypothesis.ZERO_COST_K
    assert hypothesis_class(MatrixSpec.from_grid([[Z, 1, 1], [1, 1, 1], [1, 1, 1]], 3)) is Hypothesis.INSUFFICIENT


def test_forced_rows_examples():
    assert forced_rows(MatrixSpec.from_grid([[Z, 1], [1, 1]], 2)) == frozenset()
    assert forced_rows(MatrixSpec.from_grid([[1, Z, 1], [1, 1, 1]], 2)) == frozenset()
    assert forced_rows(MatrixSpec.from_grid([[Z, Z], [1, 1]], 2)) == {0}


def test_forced_rows_requires_hypothesis():
    with pytest.raises(HypothesisError):
        forced_rows(MatrixSpec.from_grid([[Z, 1], [1, Z]], 2))


def test_remove_row():
    M = MatrixSpec.from_grid([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 3)
    R = remove_row(M, 0)
    assert (R.m, R.n, R.k) == (2, 3, 2)
    assert R.entries[0][0] == 4 and R.entries[1][2] == 9
    forced = MatrixSpec.from_grid([[Z, Z], [1, 1]], 2)
    assert hypothesis_class(remove_row(forced, 0)) is Hypothesis.EXACTLY_K_MINUS_1
    one_zero = MatrixSpec.from_grid([[Z, 1], [1, 1]], 2)
    assert hypothesis_class(remove_row(one_zero, 0)) is Hypothesis.EXACTLY_K_MINUS_1
    with pytest.raises(InvalidInstance):
        remove_row(M.with_k(0), 0)


def test_insert_zero():
    M = MatrixSpec.from_grid([[Z, 1], [1, 1]], 2)
    assert hypothesis_class(insert_zero(M, 1, 1)) is Hypothesis.ZERO_COST_K
    same_row = insert_zero(M, 0, 1)
    assert zero_positions(same_row) == {(0, 0), (0, 1)}
    assert len(max_zero_matching(same_row)) == 1
    tiny = insert_zero(MatrixSpec.from_grid([[3]], 1), 0, 0)
    assert hypothesis_class(tiny) is Hypothesis.ZERO_COST_K
    with pytest.raises(InvalidInstance):
        insert_zero(M, 0, 0)


def test_rates_are_exact_and_zero_is_not_summable():
    assert as_rate("3/4") == Fraction(3, 4)
    assert as_rate(0.5) == Fraction(1, 2)
    assert as_rate("0.25") == Fraction(1, 4)
    assert as_rate("zero") is ZERO
    for bad in (0.1, 0, -1, "-2/3", "abc", True):
        with pytest.raises(InvalidInstance):
            as_rate(bad)
    M = MatrixSpec.from_grid([[Z, 1], [1, 1]], 1)
    with pytest.raises(TypeError):
        rate_sum(M, [0], [0, 1])
    with pytest.raises(TypeError):
        Fraction(1) + ZERO


def test_spec_validation():
    with pytest.raises(InvalidInstance):
        MatrixSpec.from_grid([[1, 1]], 2)
    with pytest.raises(InvalidInstance):
        MatrixSpec(2, 2, 1, ((Fraction(1), Fraction(1)),))


@settings(max_examples=200, deadline=None)
@given(zero_patterns())
def test_konig_and_forced_rows_match_enumeration(grid):
    M = MatrixSpec.from_grid(grid, 1)
    size = len(max_zero_matching(M))
    assert size == brute_matching_size(zero_positions(M))
    k = size + 1
    if k > min(M.m, M.n):
        return
    M = M.with_k(k)
    covers = brute_covers(M)
    # minimum cover size equals the matching number
    assert covers
    assert not brute_covers_smaller(M)
    common = frozenset.intersection(*(rows for rows, _ in covers))
    assert forced_rows(M) == common


def brute_covers_smaller(M):
    return M.k >= 2 and brute_covers(M.with_k(M.k - 1))


@settings(max_examples=200, deadline=None)
@given(zero_patterns(), st.data())
def test_insert_zero_grows_matching_by_at_most_one(grid, data):
    M = MatrixSpec.from_grid(grid, 1)
    finite = [(i, j) for i in range(M.m) for j in range(M.n) if M.entries[i][j] is not ZERO]
    if not finite:
        return
    i, j = data.draw(st.sampled_from(finite))
    before = len(max_zero_matching(M))
    after = len(max_zero_matching(insert_zero(M, i, j)))
    assert before <= after <= before + 1


@settings(max_examples=200, deadline=None)
@given(zero_patterns())
def test_avoidable_rows_match_enumeration(grid):
    M = MatrixSpec.from_grid(grid, 1)
    size = len(max_zero_matching(M))
    zeros = sorted(zero_positions(M))
    maximum = [
        s for s in combinations(zeros, size)
        if len({i for i, _ in s}) == size and len({j for _, j in s}) == size
    ]
    expected = {i for i in range(M.m) if any(i not in {r for r, _ in s} for s in maximum)}
    assert avoidable_rows(M) == expected
