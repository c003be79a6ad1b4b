from fractions import Fraction
from math import prod

import pytest

from wschur.algebra import ONE, ZERO, A, Family, X, is_symmetric, key
from wschur.partitions import Partition, bar, contains, enumerate_partitions, lower_set
from wschur.schur import (a_sum, determinant, factorial_schur_det, factorial_schur_tableaux,
                          ordinary_schur, psi, raising_factorial, ssyt)


def hook_content_count(lam: Partition) -> int:
    """Number of semistandard tableaux with entries <= d."""
    cols = lam.conjugate_rows()
    num = Fraction(1)
    for i, j in lam.boxes():
        hook = lam.rows[i - 1] - j + cols[j - 1] - i + 1
        num *= Fraction(lam.d + j - i, hook)
    return int(num)


SMALL = enumerate_partitions(2, 4) + enumerate_partitions(3, 4)


@pytest.mark.parametrize("lam", SMALL, ids=str)
def test_tableau_count_matches_hook_content(lam):
    assert len(ssyt(lam)) == hook_content_count(lam)


@pytest.mark.parametrize("lam", SMALL, ids=str)
def test_det_equals_tableaux(lam):
    assert factorial_schur_det(lam) == factorial_schur_tableaux(lam)


@pytest.mark.parametrize("lam", SMALL, ids=str)
def test_top_degree_is_ordinary_schur(lam):
    s = factorial_schur_tableaux(lam)
    assert s.specialize_zero(Family.A) == ordinary_schur(lam)
    ones = {key(Family.X, i): ONE for i in range(1, lam.d + 1)}
    assert ordinary_schur(lam).substitute(ones) == hook_content_count(lam)


@pytest.mark.parametrize("lam", enumerate_partitions(3, 3), ids=str)
def test_symmetric_in_x(lam):
    assert is_symmetric(factorial_schur_tableaux(lam), lam.d)


def test_one_box():
    assert factorial_schur_tableaux(Partition.box(2)) == X(1) + X(2) - A(1) - A(2)
    assert factorial_schur_tableaux(Partition.empty(3)) == ONE


def test_raising_factorial():
    assert raising_factorial(X(1), Family.A, 0) == ONE
    assert raising_factorial(X(1), Family.A, 2) == (X(1) - A(1)) * (X(1) - A(2))
    assert raising_factorial(X(1), None, 3) == X(1) ** 3


@pytest.mark.parametrize("d", [2, 3])
def test_ordinary_vanishing(d):
    parts = enumerate_partitions(d, 3)
    for lam in parts:
        s = factorial_schur_tableaux(lam)
        for mu in parts:
            val = psi(s, mu)
            if not contains(mu, lam):
                assert val == ZERO
            elif mu == lam:
                want = prod((a_sum(lam) - a_sum(rho) for rho in lower_set(lam)), start=ONE)
                assert val == want


def test_determinant_methods_agree():
    rows = [[X(1), A(1), ONE], [A(2), X(2), X(1)], [ONE, A(1), X(2) - A(3)]]
    assert determinant(rows) == determinant(rows, "bareiss")
    with pytest.raises(ValueError):
        determinant(rows, "lu")


def test_psi_uses_bar_sequence():
    mu = Partition.of(2, [2, 1])
    assert bar(mu) == (4, 2)
    assert psi(X(1) + 2 * X(2), mu) == A(4) + 2 * A(2)
