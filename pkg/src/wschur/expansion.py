"""Expansions over factorial and weighted Schur bases.

Two independent routes compute weighted expansions:

* interpolation: a triangular sweep over partitions in a containment-refining
  order, evaluating with ``psi_nu`` and dividing by the diagonal value of the
  Vanishing Lemma;
* Pieri reduction: start from the shifted Molev-Sagan form, a polynomial in
  ``z = x_ch / v_ch`` times basis elements, and eliminate ``z`` one power at a
  time with the weighted Pieri rule.

Every result carries its residual, which must be exactly zero.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (ZERO, DenomGen, Family, LocalizedElem, MembershipViolation,
                      NotDivisible, Polynomial, canonical, expand_denominator, family_of,
                      index_of)
from .partitions import (Partition, contains, covers_adding_one_box,
                         enumerate_partitions, sort_key)
from .schur import factorial_schur_tableaux, psi
from .weighted import (a_lam, diagonal_value, psi_mu_vw, weighted_factorial_schur,
                       x_ch)

FACTORIAL = "FactorialA"
WEIGHTED_FACTORIAL = "WeightedFactorial"
WEIGHTED = "Weighted"
BASES = (FACTORIAL, WEIGHTED_FACTORIAL, WEIGHTED)


class NotInSpan(ArithmeticError):
    """Residual nonzero or an interpolation division failed."""


class SupportViolation(AssertionError):
    pass


@dataclass
class ExpansionResult:
    basis: str
    d: int
    coefficients: dict = field(default_factory=dict)
    residual: LocalizedElem = field(default_factory=lambda: LocalizedElem(ZERO))

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero()

    def support(self) -> list[Partition]:
        return sorted(self.coefficients, key=sort_key)

    def get(self, nu: Partition):
        return self.coefficients.get(nu, LocalizedElem(ZERO))

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "d": self.d,
            "coefficients": [
                {"partition": nu.to_json(),
                 "value": canonical(self.coefficients[nu]),
                 "exact": LocalizedElem.lift(self.coefficients[nu]).normalize().to_json()}
                for nu in self.support()
            ],
            "residualZero": self.residual_zero,
        }


def same_coefficients(r1: ExpansionResult, r2: ExpansionResult) -> bool:
    """Coefficient-by-coefficient equality in the localized ring."""
    for nu in set(r1.coefficients) | set(r2.coefficients):
        if LocalizedElem.lift(r1.get(nu)) != LocalizedElem.lift(r2.get(nu)):
            return False
    return True


# ordinary factorial basis

@lru_cache(maxsize=None)
def _psi_schur(rho: Partition, nu: Partition, alphabet: Family) -> Polynomial:
    return psi(factorial_schur_tableaux(rho, alphabet), nu, alphabet)


def expand_factorial(p: Polynomial, d: int, alphabet: Family = Family.A) -> ExpansionResult:
    """Write a symmetric ``p`` as ``sum_nu f_nu s_nu(x|a)`` with ``f_nu``
    polynomials not involving x."""
    bound = max(p.degree([Family.X]), 0)
    coeffs: dict[Partition, Polynomial] = {}
    for nu in enumerate_partitions(d, bound):
        val = psi(p, nu, alphabet)
        for rho, f in coeffs.items():
            if contains(nu, rho):
                val = val - f * _psi_schur(rho, nu, alphabet)
        if val.is_zero():
            continue
        try:
            coeffs[nu] = val.exact_divide(_psi_schur(nu, nu, alphabet))
        except NotDivisible as exc:
            raise NotInSpan(f"division failed at {nu}") from exc
    residual = p
    for nu, f in coeffs.items():
        residual = residual - f * factorial_schur_tableaux(nu, alphabet)
    if not residual.is_zero():
        raise NotInSpan(f"nonzero residual with {len(residual)} terms")
    return ExpansionResult(FACTORIAL, d, coeffs, LocalizedElem(residual))


@lru_cache(maxsize=None)
def structure_constants(lam: Partition, mu: Partition, same_alphabet: bool = False) -> ExpansionResult:
    """``s_lam(x|b) s_mu(x|a) = sum_nu c^nu_{lam mu}(a, b) s_nu(x|a)``.

    The second alphabet ``b`` is the ``ap`` family; ``same_alphabet`` gives
    ``c(a, a)``.
    """
    if lam.d != mu.d:
        raise ValueError("partitions with different row bounds")
    left = factorial_schur_tableaux(lam, Family.A if same_alphabet else Family.AP)
    result = expand_factorial(left * factorial_schur_tableaux(mu, Family.A), lam.d)
    for nu in result.coefficients:
        if not contains(nu, mu) or nu.size > lam.size + mu.size:
            raise SupportViolation(f"{nu} in the support of {lam} * {mu}")
    return result


# weighted bases

def exact_quotient(r: LocalizedElem, s: LocalizedElem) -> LocalizedElem:
    """``r / s`` where the numerator of ``s`` is prime to every generator.

    Clears denominators to a polynomial division and re-attaches the cleared
    generators of ``r``.
    """
    dr, ds = Counter(dict(r.den)), Counter(dict(s.den))
    common = dr & ds
    try:
        q = (r.num * expand_denominator(ds - common)).exact_divide(s.num)
    except NotDivisible as exc:
        raise NotInSpan("interpolation division failed") from exc
    f = LocalizedElem(q, dr - common).normalize()
    if f * s != r:
        raise NotInSpan("interpolation division not exact")
    return f


def _check_membership(f: LocalizedElem):
    for g, _ in f.den:
        if g.kind != "wLambda":
            raise MembershipViolation(f"coefficient denominator {g} is not a w_lambda")


def _pick_dummy(e: LocalizedElem) -> Family:
    if not e.involves(Family.A):
        return Family.A
    if e.involves(Family.AP):
        raise ValueError("expression uses both a and ap; no free alphabet for interpolation")
    return Family.AP


def weighted_expand_interpolate(e, d: int, degree_bound: int | None = None,
                                basis: str = WEIGHTED_FACTORIAL) -> ExpansionResult:
    """Expand ``e`` over ``{s^w_nu(v; x|a)}`` or over ``{s^w_nu(v; x)}``.

    For the weighted basis the sweep runs over a factorial basis in an
    alphabet that ``e`` does not use, and that alphabet is then set to zero
    in the coefficients.
    """
    e = LocalizedElem.lift(e)
    if basis == WEIGHTED_FACTORIAL:
        alphabet = Family.A
    elif basis == WEIGHTED:
        alphabet = _pick_dummy(e)
    else:
        raise ValueError(f"unknown weighted basis {basis!r}")
    if degree_bound is None:
        degree_bound = max(e.num.degree([Family.X]), 0)

    coeffs: dict[Partition, LocalizedElem] = {}
    psi_basis: dict = {}
    for nu in enumerate_partitions(d, degree_bound):
        val = psi_mu_vw(e, nu, alphabet)
        for rho, f in coeffs.items():
            if contains(nu, rho):
                got = psi_basis.get((rho, nu))
                if got is None:
                    got = psi_mu_vw(weighted_factorial_schur(rho, alphabet), nu, alphabet)
                    psi_basis[(rho, nu)] = got
                val = val - f * got
        if val.is_zero():
            continue
        f = exact_quotient(val, diagonal_value(nu, alphabet))
        _check_membership(f)
        coeffs[nu] = f

    if basis == WEIGHTED:
        coeffs = {nu: LocalizedElem(f.num.specialize_zero(alphabet), f.den).normalize()
                  for nu, f in coeffs.items()}
        coeffs = {nu: f for nu, f in coeffs.items() if not f.is_zero()}
    result = ExpansionResult(basis, d, coeffs)
    result.residual = _residual(e, coeffs, basis)
    if not result.residual_zero:
        raise NotInSpan("nonzero residual")
    return result


def basis_element(nu: Partition, basis: str) -> LocalizedElem:
    if basis == WEIGHTED_FACTORIAL:
        return weighted_factorial_schur(nu)
    if basis == WEIGHTED:
        return weighted_factorial_schur(nu, None)
    if basis == FACTORIAL:
        return LocalizedElem(factorial_schur_tableaux(nu))
    raise ValueError(f"unknown basis {basis!r}")


def _residual(e: LocalizedElem, coeffs: dict, basis: str) -> LocalizedElem:
    total = e
    for nu in sorted(coeffs, key=sort_key):
        total = total - coeffs[nu] * basis_element(nu, basis)
    return total.normalize() if not total.is_zero() else total


# Pieri-reduction route

def _zmul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, c in enumerate(p):
        if c.is_zero():
            continue
        for j, c2 in enumerate(q):
            out[i + j] = out[i + j] + c * c2
    return out


def _zadd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)]


def _shift_image(l: int, factorial: bool) -> list:
    """``a_l^vw`` (or ``0_l^vw``) as a polynomial in ``z = x_ch / v_ch``."""
    const = Polynomial.var(Family.A, l) if factorial else ZERO
    return [const, -Polynomial.var(Family.W, l)]


def _substitute_z(c: Polynomial, a_factorial: bool, b_factorial: bool) -> list:
    """Substitute ``a -> a^vw`` (or ``0^vw``) and ``b -> a^vw`` (or ``0^vw``)
    into a polynomial in the ``a`` and ``ap`` families."""
    total = [ZERO]
    for m, coeff in c.terms.items():
        term = [Polynomial.const(coeff)]
        for k, e in m:
            fam = family_of(k)
            if fam == Family.A:
                img = _shift_image(index_of(k), a_factorial)
            elif fam == Family.AP:
                img = _shift_image(index_of(k), b_factorial)
            else:
                raise ValueError(f"unexpected variable family {fam!r}")
            for _ in range(e):
                term = _zmul(term, img)
        total = _zadd(total, term)
    return total


def pieri_form(lam: Partition, mu: Partition, left_factorial: bool, right_factorial: bool) -> dict:
    """The shifted Molev-Sagan form of ``s^w_lam * s^w_mu`` (each factor
    factorial or not, same weights): a map ``nu -> [g_0, g_1, ...]`` meaning
    ``sum_j g_j z^j`` times the basis element at ``nu``. The basis is
    weighted-factorial when ``right_factorial`` else weighted."""
    consts = structure_constants(lam, mu)
    form = {}
    for nu, c in consts.coefficients.items():
        form[nu] = _substitute_z(c, right_factorial, left_factorial)
    return form


def evaluate_form(form: dict, d: int, basis: str) -> LocalizedElem:
    z = LocalizedElem.over(x_ch(d), DenomGen.vch(d))
    total = LocalizedElem(ZERO)
    for nu in sorted(form, key=sort_key):
        poly = LocalizedElem(ZERO)
        for c in reversed(form[nu]):
            poly = poly * z + c
        total = total + poly * basis_element(nu, basis)
    return total


def weighted_expand_pieri(form: dict, d: int, basis: str = WEIGHTED,
                          target=None) -> ExpansionResult:
    """Eliminate ``z`` from a form using

        z s_nu   = sum_{nu' = nu + box} s_nu' / w_nu                  (weighted)
        z s_nu   = (a_nu / w_nu) s_nu + sum s_nu' / w_nu              (weighted-factorial)

    which follow from the Pieri rules with ``z = s_box / w_ch``. The residual
    is taken against ``target`` when given, otherwise against the form itself.
    """
    if basis not in (WEIGHTED, WEIGHTED_FACTORIAL):
        raise ValueError(f"unknown weighted basis {basis!r}")
    work = {nu: [LocalizedElem.lift(c) for c in coeffs] for nu, coeffs in form.items()}
    while True:
        pending = [nu for nu, cs in work.items() if any(not c.is_zero() for c in cs[1:])]
        if not pending:
            break
        nu = min(pending, key=sort_key)
        cs = work[nu]
        j = max(i for i, c in enumerate(cs) if i > 0 and not c.is_zero())
        c = cs[j]
        cs[j] = LocalizedElem(ZERO)
        step = c * LocalizedElem.over(Polynomial.const(1), DenomGen.wlam(nu))
        for grown in covers_adding_one_box(nu):
            slot = work.setdefault(grown, [LocalizedElem(ZERO)])
            slot.extend([LocalizedElem(ZERO)] * (j - len(slot)))
            slot[j - 1] = slot[j - 1] + step
        if basis == WEIGHTED_FACTORIAL:
            cs[j - 1] = cs[j - 1] + step * a_lam(nu)
    coeffs = {}
    for nu in sorted(work, key=sort_key):
        f = work[nu][0].normalize() if work[nu] else LocalizedElem(ZERO)
        if not f.is_zero():
            _check_membership(f)
            coeffs[nu] = f
    result = ExpansionResult(basis, d, coeffs)
    if target is None:
        target = evaluate_form(form, d, basis)
    result.residual = _residual(LocalizedElem.lift(target), coeffs, basis)
    if not result.residual_zero:
        raise NotInSpan("nonzero residual after Pieri reduction")
    return result


@lru_cache(maxsize=None)
def weighted_product(lam: Partition, mu: Partition, factorial: bool, route: str = "interpolate"):
    """Expansion of ``s^w_lam * s^w_mu`` in its own basis."""
    basis = WEIGHTED_FACTORIAL if factorial else WEIGHTED
    a_family = Family.A if factorial else None
    product = weighted_factorial_schur(lam, a_family) * weighted_factorial_schur(mu, a_family)
    if route == "interpolate":
        return weighted_expand_interpolate(product, lam.d, basis=basis)
    if route == "pieri":
        form = pieri_form(lam, mu, factorial, factorial)
        return weighted_expand_pieri(form, lam.d, basis, target=product)
    raise ValueError(f"unknown route {route!r}")


@lru_cache(maxsize=None)
def change_of_basis(lam: Partition, to_weighted: bool, route: str = "interpolate"):
    """``s^w_lam(v; x|a)`` over the weighted basis (``to_weighted``), or
    ``s^w_lam(v; x)`` over the weighted-factorial basis."""
    empty = Partition.empty(lam.d)
    if to_weighted:
        source = weighted_factorial_schur(lam)
        basis = WEIGHTED
        form_args = (True, False)
    else:
        source = weighted_factorial_schur(lam, None)
        basis = WEIGHTED_FACTORIAL
        form_args = (False, True)
    if route == "interpolate":
        return weighted_expand_interpolate(source, lam.d, basis=basis)
    if route == "pieri":
        return weighted_expand_pieri(pieri_form(lam, empty, *form_args), lam.d, basis, target=source)
    raise ValueError(f"unknown route {route!r}")
