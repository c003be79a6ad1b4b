"""Finite-stage fixed-point data for weighted Grassmannians.

A stage is fixed by ``WeightConfig(d, n, itw, u)``. Fixed points are the
partitions of ``P(d, n)``; the restriction of a class to a fixed point is a
polynomial in ``y_1..y_n`` with rational coefficients.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import (ZERO, Family, LocalizedElem, NotDivisible, Polynomial, family_of,
                      index_of, key, render, substitute)
from .expansion import ExpansionResult, weighted_product
from .partitions import Partition, contains, rectangle, to_subset
from .schur import factorial_schur_at
from .weighted import psi_mu_vw, weighted_factorial_schur


class IndexOutOfConfig(ValueError):
    """A ``w``-index beyond the stage ``n``."""


class Mismatch(AssertionError):
    pass


@dataclass(frozen=True)
class WeightConfig:
    d: int
    n: int
    itw: tuple[int, ...]
    u: int

    def __post_init__(self):
        object.__setattr__(self, "itw", tuple(int(t) for t in self.itw))
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.n <= self.d:
            raise ValueError(f"need n > d, got n={self.n}, d={self.d}")
        if len(self.itw) != self.n:
            raise ValueError(f"itw needs {self.n} entries, got {len(self.itw)}")
        if any(t < 0 for t in self.itw):
            raise ValueError("itw entries must be nonnegative")
        if int(self.u) != self.u or self.u < 1:
            raise ValueError("u must be a positive integer")

    def w_image(self, l: int) -> Fraction:
        """``itw_l + u/d``."""
        if not 1 <= l <= self.n:
            raise IndexOutOfConfig(f"w{l} is outside stage n={self.n}")
        return self.itw[l - 1] + Fraction(self.u, self.d)

    def q(self, i: int) -> Fraction:
        """Shifted reversed weight ``itw_{n+1-i} + u/d``."""
        return self.w_image(self.n + 1 - i)

    def truncate(self) -> "WeightConfig":
        """The stage ``n - 1`` configuration sharing the ``itw`` prefix."""
        return WeightConfig(self.d, self.n - 1, self.itw[:-1], self.u)

    def partitions(self) -> list[Partition]:
        return rectangle(self.d, self.n)

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "itw": list(self.itw), "u": self.u}


def y(i: int) -> Polynomial:
    return Polynomial.var(Family.Y, i)


def phi_map(cfg: WeightConfig, max_w: int | None = None) -> dict:
    """Variable images of the evaluation: ``w_l -> itw_l + u/d``,
    ``a_l -> -y_{n+1-l}`` (``0`` beyond ``n``)."""
    images = {}
    for l in range(1, (max_w or cfg.n) + 1):
        images[key(Family.W, l)] = Polynomial.const(cfg.w_image(l))
    return images


def phi_n(e, cfg: WeightConfig) -> Polynomial:
    e = LocalizedElem.lift(e)
    if e.is_zero():
        return ZERO
    if e.involves(Family.X, Family.V, Family.AP, Family.WP):
        raise ValueError("phi_n is defined on expressions in a and w only")
    images = {}
    for k in e.variables():
        fam, idx = family_of(k), index_of(k)
        if fam == Family.W:
            images[k] = Polynomial.const(cfg.w_image(idx))
        elif fam == Family.A:
            images[k] = -y(cfg.n + 1 - idx) if idx <= cfg.n else ZERO
    return LocalizedElem.lift(substitute(e, images)).as_polynomial()


def restriction_via_phi(lam: Partition, mu: Partition, cfg: WeightConfig,
                        factorial: bool = True) -> Polynomial:
    """``phi_n(psi_mu(s^w_lam))``. In the factorial case this is zero unless
    ``mu`` contains ``lam``."""
    if factorial and not contains(mu, lam):
        return ZERO
    s = weighted_factorial_schur(lam, Family.A if factorial else None)
    return phi_n(psi_mu_vw(s, mu), cfg)


def shifted_y(mu: Partition, cfg: WeightConfig) -> dict[int, Polynomial]:
    """``(y^mu)_i = y_i - (q_i / q_mu) y_mu`` for ``i = 1..n``."""
    subset = to_subset(mu, cfg.n)
    y_mu = sum((y(j) for j in subset), ZERO)
    q_mu = sum(cfg.q(j) for j in subset)
    return {i: y(i) - y_mu.scale(cfg.q(i) / q_mu) for i in range(1, cfg.n + 1)}


def restriction_direct(lam: Partition, mu: Partition, cfg: WeightConfig) -> Polynomial:
    """``s_lam(-(y^mu)_{mu_1}, ..., -(y^mu)_{mu_d} | -(y^mu)_n, ..., -(y^mu)_1)``
    with the fixed point ``mu`` read as a subset of ``1..n``."""
    ys = shifted_y(mu, cfg)
    xs = [-ys[j] for j in to_subset(mu, cfg.n)]

    def alphabet(l):
        return -ys[cfg.n + 1 - l] if l <= cfg.n else ZERO

    return factorial_schur_at(lam, xs, alphabet)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("WSCHUR_WORKERS", "1")))
    except ValueError:
        return 1


def _entry(args):
    lam, mu, cfg, factorial = args
    return restriction_via_phi(lam, mu, cfg, factorial)


@dataclass
class RestrictionTable:
    config: WeightConfig
    partitions: list[Partition]
    entries: dict = field(default_factory=dict)
    factorial: bool = True

    def __getitem__(self, pair) -> Polynomial:
        return self.entries[pair]

    def row(self, lam: Partition) -> list[Polynomial]:
        return [self.entries[(lam, mu)] for mu in self.partitions]

    def triangular(self) -> bool:
        """Zero wherever ``mu`` does not contain ``lam`` (factorial tables)."""
        return all(self.entries[(lam, mu)].is_zero()
                   for lam in self.partitions for mu in self.partitions
                   if not contains(mu, lam))

    def diagonal_nonzero(self) -> bool:
        return all(not self.entries[(lam, lam)].is_zero() for lam in self.partitions)

    def homogeneous(self) -> bool:
        """Entry ``(lam, mu)`` homogeneous of degree ``|lam|`` in ``y``
        (degree ``2|lam|`` in the cohomological grading)."""
        for (lam, _), p in self.entries.items():
            if not p.is_zero() and (not p.is_homogeneous() or p.degree() != lam.size):
                return False
        return True

    def summary(self) -> dict:
        return {"triangular": self.triangular(),
                "diagonalNonzero": self.diagonal_nonzero(),
                "homogeneous": self.homogeneous()}

    def to_json(self) -> dict:
        n = self.config.n
        return {
            "config": self.config.to_json(),
            "factorial": self.factorial,
            "columns": [list(to_subset(mu, n)) for mu in self.partitions],
            "rows": [{"partition": lam.to_json(),
                      "cells": [render(p) for p in self.row(lam)]}
                     for lam in self.partitions],
            "summary": self.summary(),
        }

    def to_csv(self) -> str:
        n = self.config.n
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cfg = self.config
        w.writerow(["# d", cfg.d, "n", n, "itw", " ".join(map(str, cfg.itw)), "u", cfg.u])
        w.writerow(["lambda"] + ["{" + " ".join(map(str, to_subset(mu, n))) + "}"
                                 for mu in self.partitions])
        for lam in self.partitions:
            w.writerow([" ".join(map(str, lam.rows))] + [render(p) for p in self.row(lam)])
        return buf.getvalue()


def build_table(cfg: WeightConfig, factorial: bool = True, workers: int | None = None) -> RestrictionTable:
    parts = cfg.partitions()
    pairs = [(lam, mu) for lam in parts for mu in parts]
    workers = _default_workers() if workers is None else workers
    jobs = [(lam, mu, cfg, factorial) for lam, mu in pairs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_entry, jobs, chunksize=4))
    else:
        values = [_entry(j) for j in jobs]
    return RestrictionTable(cfg, parts, dict(zip(pairs, values)), factorial)


@lru_cache(maxsize=32)
def cached_table(cfg: WeightConfig, factorial: bool = True) -> RestrictionTable:
    return build_table(cfg, factorial, workers=1)


def evaluate_weights(lam: Partition, cfg: WeightConfig, factorial: bool = True) -> LocalizedElem:
    """``s^w_lam`` with ``w_l -> itw_l + u/d``; only ``v_ch`` denominators remain."""
    s = weighted_factorial_schur(lam, Family.A if factorial else None)
    top = s.num.max_index(Family.W)
    if top > cfg.n:
        raise IndexOutOfConfig(f"{lam} uses w{top} beyond stage n={cfg.n}")
    return LocalizedElem.lift(substitute(s, phi_map(cfg, top))).normalize()


def killed(lam: Partition, cfg: WeightConfig, factorial: bool = True) -> bool:
    """Every fixed-point restriction of ``s^w_lam`` vanishes."""
    return all(restriction_via_phi(lam, mu, cfg, factorial).is_zero() for mu in cfg.partitions())


def table_structure_constants(table: RestrictionTable, lam: Partition, mu: Partition) -> dict:
    """Solve ``row_lam * row_mu = sum_nu C_nu row_nu`` pointwise by a
    triangular sweep over the fixed points, dividing exactly in ``Q[y]``."""
    coeffs = {}
    for nu in table.partitions:
        val = table[(lam, nu)] * table[(mu, nu)]
        for rho, c in coeffs.items():
            val = val - c * table[(rho, nu)]
        if val.is_zero():
            continue
        try:
            coeffs[nu] = val.exact_divide(table[(nu, nu)])
        except NotDivisible as exc:
            raise Mismatch(f"pointwise product not in the span at {nu}") from exc
    return coeffs


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)

    def add(self, label: str, ok: bool, detail: str = ""):
        self.checks.append((label, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(c[1] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def require(self):
        if not self.ok:
            label, _, detail = self.failures()[0]
            raise Mismatch(f"{self.name}: {label} {detail}".strip())
        return self

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "checks": [{"check": l, "ok": o, "detail": d} for l, o, d in self.checks]}


def _phi_coeffs(result: ExpansionResult, cfg: WeightConfig) -> dict:
    parts = set(cfg.partitions())
    return {nu: phi_n(c, cfg) for nu, c in result.coefficients.items() if nu in parts}


def verify_homomorphism(cfg: WeightConfig, lam: Partition, mu: Partition,
                        tables: dict | None = None) -> Report:
    """Product consistency of the evaluated classes.

    Equivariant: ``phi_n`` of the weighted-factorial coefficients of
    ``s^w_lam * s^w_mu`` reproduces the pointwise product of table rows at
    every fixed point, and a triangular solve from the rows alone recovers
    the same coefficients. Classes outside ``P(d, n)`` restrict to zero.
    Nonequivariant: ``phi_n`` of the weighted (``a = 0``) coefficients equals
    the equivariant constants at ``y = 0``.
    """
    report = Report(f"homomorphism {lam} x {mu}")
    table = tables.get(cfg) if tables is not None else None
    if table is None:
        table = cached_table(cfg)
    parts = table.partitions
    inside = set(parts)
    for name, p in (("lambda", lam), ("mu", mu)):
        if p not in inside:
            report.add(f"{name}={p} killed", killed(p, cfg))
    if lam not in inside or mu not in inside:
        return report
    coeffs = _phi_coeffs(weighted_product(lam, mu, True), cfg)
    for kappa in parts:
        lhs = table[(lam, kappa)] * table[(mu, kappa)]
        rhs = ZERO
        for nu, c in coeffs.items():
            rhs = rhs + c * table[(nu, kappa)]
        report.add(f"pointwise product at {kappa}", lhs == rhs)
    solved = table_structure_constants(table, lam, mu)
    report.add("table solve = evaluated coefficients",
               all(solved.get(nu, ZERO) == coeffs.get(nu, ZERO) for nu in set(solved) | set(coeffs)))
    plain = _phi_coeffs(weighted_product(lam, mu, False), cfg)
    zero_y = {key(Family.Y, i): ZERO for i in range(1, cfg.n + 1)}
    report.add("nonequivariant constants = equivariant at y=0",
               all(coeffs.get(nu, ZERO).substitute(zero_y) == plain.get(nu, ZERO)
                   for nu in set(coeffs) | set(plain)))
    return report


def rho_pullback(p: Polynomial, n: int) -> Polynomial:
    """``y_1 -> 0``, ``y_i -> y_{i-1}`` on ``Q[y_1..y_n]``."""
    images = {key(Family.Y, 1): ZERO}
    images.update({key(Family.Y, i): y(i - 1) for i in range(2, n + 1)})
    return p.substitute(images)


def pullback_check(cfg_next: WeightConfig, products: bool = True, max_total: int = 4) -> Report:
    """Compare stage ``n + 1`` with stage ``n`` (``itw`` truncated).

    Fixed points include by ``S -> S + 1``, which keeps the partition. Rows
    of classes inside ``P(d, n)`` must pull back to the stage-``n`` rows and
    the remaining classes to zero. With ``products`` the non-factorial
    structure constants of both stages are compared on ``P(d, n)`` for
    factors with ``|lam| + |mu| <= max_total``.
    """
    cfg = cfg_next.truncate()
    report = Report(f"pullback n={cfg.n} -> {cfg_next.n}")
    big = cached_table(cfg_next)
    small = cached_table(cfg)
    small_parts = set(small.partitions)
    for lam in big.partitions:
        for mu in small.partitions:
            pulled = rho_pullback(big[(lam, mu)], cfg_next.n)
            want = small[(lam, mu)] if lam in small_parts else ZERO
            report.add(f"rho*({lam} at {mu})", pulled == want)
    if products:
        for i, lam in enumerate(small.partitions):
            for mu in small.partitions[i:]:
                if lam.size + mu.size > max_total:
                    continue
                result = weighted_product(lam, mu, False)
                same = True
                for nu, c in result.coefficients.items():
                    if nu in small_parts:
                        same &= phi_n(c, cfg) == phi_n(c, cfg_next)
                    elif nu.in_rectangle(cfg_next.n):
                        # survives at stage n + 1 only; its class pulls back to zero
                        same &= all(rho_pullback(big[(nu, k)], cfg_next.n).is_zero()
                                    for k in small.partitions)
                report.add(f"constants {lam} x {mu}", same)
    return report
