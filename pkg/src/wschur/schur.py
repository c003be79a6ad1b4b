"""Factorial Schur functions ``s_lambda(x|a)``.

Two independent routes are provided: the determinant ratio (divided exactly
by the Vandermonde product) and the sum over semistandard tableaux. The
tableau sum is generic over the ring, which lets the weighted functions and
the fixed-point evaluations reuse it with substituted alphabets.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import (ONE, ZERO, Family, NotDivisible, Polynomial, X, key)
from .partitions import Partition, bar


class InternalNonDivisible(RuntimeError):
    """Determinant not divisible by the Vandermonde product (a bug, never bad input)."""


def alphabet_var(family: Family | None, l: int) -> Polynomial:
    """``a_l`` of the chosen alphabet; ``None`` is the zero alphabet."""
    if family is None:
        return ZERO
    return Polynomial.var(family, l)


def raising_factorial(y, family: Family | None, k: int):
    """``(y|a)^k = (y - a_1) ... (y - a_k)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = ONE
    for l in range(1, k + 1):
        out = out * (y - alphabet_var(family, l))
    return out


def ssyt(shape: Partition):
    """Semistandard tableaux of ``shape`` with entries in ``1..d``, as tuples
    of columns, built column by column."""
    d = shape.d
    heights = shape.conjugate_rows()
    found = []

    def fill_column(j, prev, column, cols):
        i = len(column)
        h = heights[j]
        if i == h:
            walk(j + 1, cols + (tuple(column),))
            return
        low = column[-1] + 1 if column else 1
        if prev is not None:
            low = max(low, prev[i])
        for t in range(low, d - (h - i - 1) + 1):
            column.append(t)
            fill_column(j, prev, column, cols)
            column.pop()

    def walk(j, cols):
        if j == len(heights):
            found.append(cols)
            return
        fill_column(j, cols[-1] if cols else None, [], cols)

    walk(0, ())
    return found


def tableau_sum(shape: Partition, factor, one=ONE):
    """``sum_T prod_boxes factor(T(box), row, col)`` over semistandard tableaux,
    with shared prefix products along the column-by-column backtracking."""
    d = shape.d
    heights = shape.conjugate_rows()
    cache = {}

    def f(t, i, j):
        got = cache.get((t, i, j))
        if got is None:
            got = factor(t, i, j)
            cache[(t, i, j)] = got
        return got

    total = None

    def fill(j, prev, column, prod):
        nonlocal total
        i = len(column)
        if j == len(heights):
            total = prod if total is None else total + prod
            return
        h = heights[j]
        if i == h:
            fill(j + 1, column, [], prod)
            return
        low = column[-1] + 1 if column else 1
        if prev is not None:
            low = max(low, prev[i])
        for t in range(low, d - (h - i - 1) + 1):
            column.append(t)
            fill(j, prev, column, prod * f(t, i + 1, j + 1))
            column.pop()

    fill(0, None, [], one)
    return total if total is not None else one * 0


def factorial_schur_at(lam: Partition, xs, a, one=ONE):
    """``s_lambda(xs | a)`` for ring elements ``xs[0..d-1]`` and an alphabet
    given as a callable ``l -> a_l``."""
    if len(xs) != lam.d:
        raise ValueError(f"need {lam.d} x-values, got {len(xs)}")
    return tableau_sum(lam, lambda t, i, j: xs[t - 1] - a(t + j - i), one)


@lru_cache(maxsize=None)
def factorial_schur_tableaux(lam: Partition, alphabet: Family | None = Family.A) -> Polynomial:
    """``sum_T prod (x_T(alpha) - a_{T(alpha) + c(alpha)})`` with content
    ``c = column - row``."""
    xs = [X(i) for i in range(1, lam.d + 1)]
    return factorial_schur_at(lam, xs, lambda l: alphabet_var(alphabet, l))


def _det_minors(rows):
    """Laplace expansion along rows, memoized on the remaining column set."""
    n = len(rows)
    memo = {}

    def minor(k, cols):
        if k == n:
            return ONE
        got = memo.get(cols)
        if got is None:
            got = ZERO
            for pos, j in enumerate(cols):
                entry = rows[k][j]
                if entry.is_zero():
                    continue
                sub = minor(k + 1, cols[:pos] + cols[pos + 1:])
                term = entry * sub
                got = got + term if pos % 2 == 0 else got - term
            memo[cols] = got
        return got

    return minor(0, tuple(range(n)))


def _det_bareiss(rows):
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_divide(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant(rows, method: str = "minors"):
    """Fraction-free determinant by memoized cofactor expansion, or by Bareiss
    elimination with ``method="bareiss"``."""
    if method == "bareiss":
        return _det_bareiss(rows)
    if method != "minors":
        raise ValueError(f"unknown determinant method {method!r}")
    return _det_minors(rows)


def vandermonde_factors(d: int):
    return [X(i) - X(j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]


@lru_cache(maxsize=None)
def factorial_schur_det(lam: Partition, alphabet: Family | None = Family.A) -> Polynomial:
    """``det[(x_j|a)^{b_i + d - i}] / prod_{i<j}(x_i - x_j)``."""
    d = lam.d
    rows = []
    for i, b in enumerate(lam.rows, start=1):
        k = b + d - i
        rows.append([raising_factorial(X(j), alphabet, k) for j in range(1, d + 1)])
    num = determinant(rows)
    try:
        for factor in vandermonde_factors(d):
            num = num.exact_divide(factor)
    except NotDivisible as exc:
        raise InternalNonDivisible(f"determinant for {lam} not divisible") from exc
    return num


def ordinary_schur(lam: Partition) -> Polynomial:
    return factorial_schur_tableaux(lam, None)


def psi(p: Polynomial, mu: Partition, alphabet: Family = Family.A) -> Polynomial:
    """``x_i -> a_{bar(mu)_i}``."""
    images = {key(Family.X, i): Polynomial.var(alphabet, b)
              for i, b in enumerate(bar(mu), start=1)}
    return p.rename(images)


def a_sum(lam: Partition, alphabet: Family = Family.A) -> Polynomial:
    """``a_lambda = sum_i a_{bar(lambda)_i}``."""
    out = ZERO
    for b in bar(lam):
        out = out + Polynomial.var(alphabet, b)
    return out
