from math import comb

import pytest
from hypothesis import given, strategies as st

from wschur.partitions import (NotInRectangle, Partition, bar, contains, covers_adding_one_box,
                               enumerate_partitions, from_subset, lower_set, rectangle,
                               sort_key, subsets, to_subset)


@st.composite
def partitions(draw, max_d=4, max_part=4):
    d = draw(st.integers(1, max_d))
    rows = sorted((draw(st.integers(0, max_part)) for _ in range(d)), reverse=True)
    return Partition(d, tuple(rows))


@given(partitions())
def test_bar_is_strictly_decreasing_and_invertible(lam):
    b = bar(lam)
    assert all(b[i] > b[i + 1] for i in range(len(b) - 1))
    assert b[-1] >= 1
    assert Partition.from_bar(b) == lam


@given(partitions(), st.integers(0, 3))
def test_subset_round_trip(lam, extra):
    n = lam.d + lam.rows[0] + extra + (1 if lam.rows[0] == 0 else 0)
    s = to_subset(lam, n)
    assert list(s) == sorted(s) and len(set(s)) == lam.d
    assert from_subset(s, n) == lam


@given(partitions())
def test_lower_set_members_are_smaller(lam):
    for rho in lower_set(lam):
        assert rho.size < lam.size
        assert len(set(bar(rho)) ^ set(bar(lam))) == 2


@given(partitions())
def test_covers_add_one_box(lam):
    for grown in covers_adding_one_box(lam):
        assert grown.size == lam.size + 1 and contains(grown, lam)


def test_padding_and_validation():
    assert Partition.of(3, [2]) == Partition(3, (2, 0, 0))
    assert Partition.of(2, [1, 0, 0]) == Partition(2, (1, 0))
    for bad in ([1, 2], [-1, 0]):
        with pytest.raises(ValueError):
            Partition.of(2, bad)
    with pytest.raises(ValueError):
        Partition.of(2, [1, 1, 1])


def test_bar_examples():
    assert bar(Partition.of(2, [])) == (2, 1)
    assert bar(Partition.of(2, [1])) == (3, 1)
    assert bar(Partition.of(3, [2, 1])) == (5, 3, 1)


def test_enumeration_order():
    assert enumerate_partitions(2, 2) == [Partition.of(2, []), Partition.of(2, [1]),
                                          Partition.of(2, [2]), Partition.of(2, [1, 1])]


@pytest.mark.parametrize("d,n", [(1, 3), (2, 3), (2, 4), (2, 5), (3, 6)])
def test_rectangle_size_is_binomial(d, n):
    parts = rectangle(d, n)
    assert len(parts) == comb(n, d)
    assert sorted(to_subset(p, n) for p in parts) == subsets(n, d)


def test_order_refines_containment():
    parts = enumerate_partitions(3, 5)
    for i, lam in enumerate(parts):
        for mu in parts[:i]:
            assert not (contains(mu, lam) and mu != lam)
    assert sorted(parts, key=sort_key) == parts


def test_not_in_rectangle():
    with pytest.raises(NotInRectangle):
        to_subset(Partition.of(2, [3]), 4)


def test_lower_set_example():
    # bar (3, 1): 3 -> 2 gives bar (2, 1)
    assert lower_set(Partition.of(2, [1])) == [Partition.of(2, [])]
    # bar (3, 2): 3 -> 1 gives (2, 1), 2 -> 1 gives (3, 1)
    assert lower_set(Partition.of(2, [1, 1])) == [Partition.of(2, []), Partition.of(2, [1])]
    assert lower_set(Partition.of(2, [])) == []


def test_conjugate():
    assert Partition.of(3, [3, 1]).conjugate_rows() == (2, 1, 1)
    assert list(Partition.of(2, [2, 1]).boxes()) == [(1, 1), (1, 2), (2, 1)]
