"""Weighted (factorial) Schur functions.

The shifted alphabets are

    x_i^v   = x_i - (v_i / v_ch) x_ch
    a_l^vw  = a_l - (w_l / v_ch) x_ch
    0_l^vw  = -(w_l / v_ch) x_ch

and ``s^w_lambda(v; x|a) = s_lambda(x^v | a^vw)``. Every box factor of the
tableau formula has the single denominator ``v_ch``, so the functions are
assembled as ``numerator / v_ch^|lambda|`` without any division step.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .algebra import (ONE, ZERO, DenomGen, Family, LocalizedElem, Polynomial,
                      family_sum, key, substitute)
from .partitions import Partition, bar, contains, covers_adding_one_box, lower_set
from .schur import factorial_schur_det, tableau_sum


def x_ch(d: int) -> Polynomial:
    return family_sum(Family.X, range(1, d + 1))


def v_ch(d: int) -> Polynomial:
    return family_sum(Family.V, range(1, d + 1))


def w_ch(d: int, family: Family = Family.W) -> Polynomial:
    return family_sum(family, range(1, d + 1))


def a_ch(d: int, family: Family = Family.A) -> Polynomial:
    return family_sum(family, range(1, d + 1))


def w_lam(lam: Partition, family: Family = Family.W) -> Polynomial:
    return family_sum(family, bar(lam))


def a_lam(lam: Partition, family: Family = Family.A) -> Polynomial:
    return family_sum(family, bar(lam))


def _over_vch(num: Polynomial, d: int, power: int = 1) -> LocalizedElem:
    return LocalizedElem(num, Counter({DenomGen.vch(d): power}))


def shifted_x(i: int, d: int) -> LocalizedElem:
    """``x_i^v``."""
    return _over_vch(v_ch(d) * Polynomial.var(Family.X, i)
                     - Polynomial.var(Family.V, i) * x_ch(d), d)


def shifted_a(l: int, d: int, a_family: Family | None = Family.A,
              w_family: Family = Family.W) -> LocalizedElem:
    """``a_l^vw``; with ``a_family=None`` this is ``0_l^vw``."""
    num = -(Polynomial.var(w_family, l) * x_ch(d))
    if a_family is not None:
        num = num + v_ch(d) * Polynomial.var(a_family, l)
    return _over_vch(num, d)


def _box_numerator(d, a_family, w_family):
    xs = x_ch(d)
    vs = v_ch(d)

    def factor(t, i, j):
        # v_ch * (x_t^v - a_k^vw) with k = t + content
        k = t + j - i
        num = (vs * Polynomial.var(Family.X, t) - Polynomial.var(Family.V, t) * xs
               + Polynomial.var(w_family, k) * xs)
        if a_family is not None:
            num = num - vs * Polynomial.var(a_family, k)
        return num

    return factor


@lru_cache(maxsize=None)
def weighted_factorial_schur(lam: Partition, a_family: Family | None = Family.A,
                             w_family: Family = Family.W) -> LocalizedElem:
    """``s^w_lambda(v; x|a)``; ``a_family=None`` gives the weighted Schur
    function ``s^w_lambda(v; x)``."""
    num = tableau_sum(lam, _box_numerator(lam.d, a_family, w_family))
    return _over_vch(num, lam.d, lam.size)


def weighted_schur(lam: Partition, w_family: Family = Family.W) -> LocalizedElem:
    return weighted_factorial_schur(lam, None, w_family)


def psi_map(mu: Partition, target: Family = Family.A) -> dict:
    """Variable images of ``psi_mu``: ``x_i -> a_{bar mu_i}``, ``v_i -> w_{bar mu_i}``."""
    images = {}
    for i, b in enumerate(bar(mu), start=1):
        images[key(Family.X, i)] = Polynomial.var(target, b)
        images[key(Family.V, i)] = Polynomial.var(Family.W, b)
    return images


def psi_mu_vw(e, mu: Partition, target: Family = Family.A) -> LocalizedElem:
    """Evaluation ``psi_mu``; ``v_ch`` goes to ``w_mu``. ``target`` picks the
    alphabet receiving the x-variables."""
    return LocalizedElem.lift(e).rename(psi_map(mu, target))


def mu_shifted_a(l: int, mu: Partition) -> LocalizedElem:
    """``(a^mu)_l = a_l - (w_l / w_mu) a_mu``."""
    num = w_lam(mu) * Polynomial.var(Family.A, l) - Polynomial.var(Family.W, l) * a_lam(mu)
    return LocalizedElem.over(num, DenomGen.wlam(mu))


class _Unconstrained:
    """No closed form is predicted (``mu`` strictly contains ``lambda``)."""

    def __repr__(self):
        return "UNCONSTRAINED"


UNCONSTRAINED = _Unconstrained()


def diagonal_value(lam: Partition, a_family: Family = Family.A) -> LocalizedElem:
    """``prod_{rho in [lam]_-} ((w_rho / w_lam) a_lam - a_rho)``."""
    num = ONE
    rhos = lower_set(lam)
    wl, al = w_lam(lam), a_lam(lam, a_family)
    for rho in rhos:
        num = num * (w_lam(rho) * al - wl * a_lam(rho, a_family))
    return LocalizedElem(num, Counter({DenomGen.wlam(lam): len(rhos)}))


def vanishing_value(lam: Partition, mu: Partition):
    """Closed-form value of ``psi_mu(s^w_lam(v; x|a))``: zero when ``mu``
    does not contain ``lam``, the diagonal product when they are equal, and
    :data:`UNCONSTRAINED` otherwise."""
    if not contains(mu, lam):
        return LocalizedElem(ZERO)
    if mu == lam:
        return diagonal_value(lam)
    return UNCONSTRAINED


def weighted_pieri_lhs(lam: Partition, factorial: bool = True) -> LocalizedElem:
    """``s^{w'}_box(v; x|a') * s^w_lam(v; x|a)`` (or the ``a = a' = 0`` version)
    with independent primed alphabets."""
    box = Partition.box(lam.d)
    if factorial:
        left = weighted_factorial_schur(box, Family.AP, Family.WP)
        right = weighted_factorial_schur(lam, Family.A, Family.W)
    else:
        left = weighted_schur(box, Family.WP)
        right = weighted_schur(lam, Family.W)
    return left * right


def weighted_pieri_rhs(lam: Partition, factorial: bool = True) -> LocalizedElem:
    """Right-hand side of the weighted Pieri rule:

        ((w'_ch / w_lam) a_lam - a'_ch) s_lam + sum_{lam' = lam + box} (w'_ch / w_lam) s_lam'

    where the first term is absent in the non-factorial case.
    """
    d = lam.d
    ratio = LocalizedElem.over(w_ch(d, Family.WP), DenomGen.wlam(lam))
    a_family = Family.A if factorial else None
    total = LocalizedElem(ZERO)
    for grown in covers_adding_one_box(lam):
        total = total + ratio * weighted_factorial_schur(grown, a_family)
    if factorial:
        diag = ratio * a_lam(lam) - a_ch(d, Family.AP)
        total = total + diag * weighted_factorial_schur(lam, a_family)
    return total


def weighted_factorial_schur_det(lam: Partition, a_family: Family | None = Family.A) -> LocalizedElem:
    """The same function through the determinant formula, by substituting the
    shifted alphabets into ``s_lambda(x|a)``."""
    d = lam.d
    images = {key(Family.X, i): shifted_x(i, d) for i in range(1, d + 1)}
    for l in range(1, d + max(lam.rows[0], 1)):
        images[key(Family.A, l)] = shifted_a(l, d, a_family)
    return LocalizedElem.lift(substitute(factorial_schur_det(lam, Family.A), images)).normalize()
