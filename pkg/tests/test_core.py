from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from greedysums.core import (
    EMPTY_INTERVAL,
    Interval,
    SparseVector,
    format_vector,
    index_set,
    parse_vector,
    project,
    sign_pattern,
    spread,
    sup_norm,
    surrounds,
)

from .conftest import vectors

sets = st.frozensets(st.integers(min_value=1, max_value=30), max_size=8)


@pytest.mark.parametrize("A, expected", [((), 0), ((3,), 1), ((5, 9), 5)])
def test_spread(A, expected):
    assert spread(A) == expected


@pytest.mark.parametrize(
    "B, A, expected",
    [((1, 100), (), True), ((1, 10), (4, 5), True), ((1, 5, 10), (4, 6), False)],
)
def test_surrounds(B, A, expected):
    assert surrounds(B, A) is expected


def test_project_examples():
    x = SparseVector.from_dense([5, 4, 3])
    assert project(x, {1, 3}) == SparseVector({1: 5, 3: 3})
    assert project(x, ()) == SparseVector()
    assert project(x, range(1, 10)) == x


@pytest.mark.parametrize(
    "x, expected",
    [([3, -4, 1], 4), ([], 0), ([F(-8, 10), 1], 1)],
)
def test_sup_norm(x, expected):
    assert sup_norm(SparseVector.from_dense(x)) == expected


def test_zero_coefficients_dropped():
    x = SparseVector({1: 0, 2: F(1, 2), 5: 0})
    assert x.support == (2,)
    assert len(x) == 1


def test_bad_indices_rejected():
    with pytest.raises(ValueError):
        SparseVector({0: 1})
    with pytest.raises(ValueError):
        index_set([0, 2])


def test_interval():
    assert len(EMPTY_INTERVAL) == 0 and EMPTY_INTERVAL.is_empty
    assert Interval(3, 5).indices() == (3, 4, 5)
    with pytest.raises(ValueError):
        Interval(5, 3)


def test_sign_pattern_validates():
    assert sign_pattern({1: 1, 4: -1}) == {1: 1, 4: -1}
    with pytest.raises(ValueError):
        sign_pattern({1: 2})


def test_vector_literal_round_trip():
    x = parse_vector("16:1, 17:-4/5,3:0.25")
    assert x == SparseVector({16: 1, 17: F(-4, 5), 3: F(1, 4)})
    assert parse_vector(format_vector(x)) == x
    assert parse_vector("") == SparseVector()
    with pytest.raises(ValueError):
        parse_vector("1=2")


@given(vectors(), sets)
def test_project_idempotent(x, A):
    assert project(project(x, A), A) == project(x, A)


@given(sets.filter(bool))
def test_spread_at_least_size(A):
    assert spread(A) >= len(A)


@given(sets, sets, st.data())
def test_surrounds_monotone(B, A, data):
    if surrounds(B, A):
        sub = data.draw(st.frozensets(st.sampled_from(sorted(B)), max_size=len(B)) if B else st.just(frozenset()))
        assert surrounds(sub, A)


@given(vectors(), vectors())
def test_vector_arithmetic(x, y):
    assert (x + y) - y == x
    assert x * 0 == SparseVector()
    assert -(-x) == x
