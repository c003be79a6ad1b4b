"""Verification suites behind ``wschur verify``.

Every suite returns a :class:`~wschur.grassmann.Report` with one entry per
instance checked. Independent instances can be spread over worker processes
(``WSCHUR_WORKERS``); reports are assembled in input order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

from .algebra import Family, LocalizedElem, Polynomial, family_of, index_of, key
from .expansion import (NotInSpan, change_of_basis, same_coefficients, structure_constants,
                        weighted_product)
from .grassmann import (Report, WeightConfig, build_table, killed, pullback_check,
                        restriction_direct, restriction_via_phi, verify_homomorphism)
from .partitions import Partition, contains, enumerate_partitions
from .schur import factorial_schur_det, factorial_schur_tableaux, ordinary_schur
from .weighted import (UNCONSTRAINED, psi_mu_vw, vanishing_value, weighted_factorial_schur,
                       weighted_pieri_lhs, weighted_pieri_rhs)

SUITES = ("vanishing", "pieri", "basis", "closure", "homomorphism", "pullback")
DEFAULT_SIZES = {"vanishing": 4, "pieri": 3, "basis": 3, "closure": 2, "homomorphism": 4,
                 "pullback": 4}


def default_itw(n: int) -> tuple[int, ...]:
    return tuple((1, 0, 2, 1)[i % 4] for i in range(n))


def workers() -> int:
    try:
        return max(1, int(os.environ.get("WSCHUR_WORKERS", "1")))
    except ValueError:
        return 1


def _fan_out(fn, jobs):
    if workers() > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers()) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def _collect(report: Report, results):
    for label, ok, detail in results:
        report.add(label, ok, detail)
    return report


# vanishing

def _vanishing_one(pair):
    lam, mu = pair
    want = vanishing_value(lam, mu)
    got = psi_mu_vw(weighted_factorial_schur(lam), mu)
    if want is UNCONSTRAINED:
        return f"psi_{mu}(s_{lam}) nonzero", not got.is_zero(), ""
    ok = got == want
    return f"psi_{mu}(s_{lam})", ok, "" if ok else f"got {got}, want {want}"


def vanishing(d: int, max_size: int) -> Report:
    parts = enumerate_partitions(d, max_size)
    jobs = [(lam, mu) for lam in parts for mu in parts]
    return _collect(Report(f"vanishing d={d} size<={max_size}"), _fan_out(_vanishing_one, jobs))


# pieri

def _pieri_one(job):
    lam, factorial = job
    ok = weighted_pieri_lhs(lam, factorial) == weighted_pieri_rhs(lam, factorial)
    return f"{'awPR' if factorial else 'wPR'} at {lam}", ok, ""


def pieri(d: int, max_size: int) -> Report:
    jobs = [(lam, f) for lam in enumerate_partitions(d, max_size) for f in (True, False)]
    return _collect(Report(f"pieri d={d} size<={max_size}"), _fan_out(_pieri_one, jobs))


# basis: two formulas, triangularity, change of basis

def _only_wlambda(result) -> bool:
    return all(g.kind == "wLambda" for c in result.coefficients.values()
               for g, _ in LocalizedElem.lift(c).den)


def _change_one(job):
    lam, to_weighted = job
    tag = "over weighted" if to_weighted else "over weighted-factorial"
    try:
        r1 = change_of_basis(lam, to_weighted, "interpolate")
        r2 = change_of_basis(lam, to_weighted, "pieri")
    except NotInSpan as exc:
        return f"change of basis {lam} {tag}", False, str(exc)
    ok = r1.residual_zero and _only_wlambda(r1) and same_coefficients(r1, r2)
    return f"change of basis {lam} {tag}", ok, ""


def triangularity(d: int, max_size: int) -> list:
    parts = enumerate_partitions(d, max_size)
    out = []
    for lam in parts:
        s = weighted_factorial_schur(lam)
        for mu in parts:
            val = psi_mu_vw(s, mu)
            if not contains(mu, lam):
                out.append((f"upper entry ({lam}, {mu}) zero", val.is_zero(), ""))
            elif mu == lam:
                out.append((f"diagonal {lam} nonzero", not val.is_zero(), ""))
    return out


def basis(d: int, max_size: int, cfg: WeightConfig | None = None) -> Report:
    report = Report(f"basis d={d} size<={max_size}")
    for lam in enumerate_partitions(d, max_size):
        ok = factorial_schur_det(lam) == factorial_schur_tableaux(lam)
        report.add(f"det = tableaux at {lam}", ok)
    _collect(report, triangularity(d, max_size))
    if cfg is not None:
        table = build_table(cfg)
        report.add(f"table n={cfg.n} triangular", table.triangular())
        report.add(f"table n={cfg.n} diagonal nonzero", table.diagonal_nonzero())
        report.add(f"table n={cfg.n} homogeneous", table.homogeneous())
    jobs = [(lam, t) for lam in enumerate_partitions(d, max_size) for t in (True, False)]
    return _collect(report, _fan_out(_change_one, jobs))


# closure and structure constants

def _closure_one(pair):
    lam, mu = pair
    try:
        r1 = weighted_product(lam, mu, False, "interpolate")
        r2 = weighted_product(lam, mu, False, "pieri")
    except NotInSpan as exc:
        return f"closure {lam} x {mu}", False, str(exc)
    a_free = not any(LocalizedElem.lift(c).involves(Family.A) for c in r1.coefficients.values())
    ok = r1.residual_zero and a_free and _only_wlambda(r1) and same_coefficients(r1, r2)
    return f"closure {lam} x {mu}", ok, ""


def shift_invariant(lam: Partition, mu: Partition) -> bool:
    """``c(a, a)`` unchanged under ``a_l -> a_l + t``; ``y1`` plays ``t``."""
    t = Polynomial.var(Family.Y, 1)
    for c in structure_constants(lam, mu, True).coefficients.values():
        images = {k: Polynomial.var(Family.A, index_of(k)) + t
                  for k in c.variables() if family_of(k) == Family.A}
        if c.substitute(images) != c:
            return False
    return True


def lr_brute_force(lam: Partition, mu: Partition) -> dict:
    """Littlewood-Richardson numbers by peeling lex-leading monomials off
    ``s_lam * s_mu`` in ``x_1..x_d``."""
    d = lam.d
    rest = ordinary_schur(lam) * ordinary_schur(mu)
    out = {}

    def exponents(m):
        e = dict(m)
        return tuple(e.get(key(Family.X, i), 0) for i in range(1, d + 1))

    while not rest.is_zero():
        lead = max(rest.terms, key=exponents)
        nu = Partition(d, exponents(lead))
        c = rest.terms[lead]
        out[nu] = c
        rest = rest - ordinary_schur(nu).scale(c)
    return out


def classical_lr(lam: Partition, mu: Partition) -> bool:
    brute = lr_brute_force(lam, mu)
    for same in (False, True):
        consts = structure_constants(lam, mu, same).coefficients
        got = {nu: c.specialize_zero(Family.A, Family.AP) for nu, c in consts.items()}
        got = {nu: c.constant_value() for nu, c in got.items() if not c.is_zero()}
        if got != brute:
            return False
    return True


def closure(d: int, max_size: int) -> Report:
    parts = enumerate_partitions(d, max_size)
    pairs = [(lam, mu) for i, lam in enumerate(parts) for mu in parts[i:]]
    report = _collect(Report(f"closure d={d} size<={max_size}"), _fan_out(_closure_one, pairs))
    for lam, mu in pairs:
        report.add(f"shift invariance c({lam},{mu})", shift_invariant(lam, mu))
        report.add(f"LR numbers {lam} x {mu}", classical_lr(lam, mu))
    return report


# finite stages

def _hom_one(job):
    cfg, lam, mu = job
    r = verify_homomorphism(cfg, lam, mu)
    bad = r.failures()
    return r.name, r.ok, bad[0][0] if bad else ""


def homomorphism(cfg: WeightConfig, max_total: int = 4) -> Report:
    report = Report(f"homomorphism d={cfg.d} n={cfg.n} itw={list(cfg.itw)} u={cfg.u}")
    parts = cfg.partitions()
    for lam in parts:
        for mu in parts:
            ok = restriction_direct(lam, mu, cfg) == restriction_via_phi(lam, mu, cfg)
            report.add(f"direct = via phi at ({lam}, {mu})", ok)
    jobs = [(cfg, lam, mu) for i, lam in enumerate(parts) for mu in parts[i:]
            if lam.size + mu.size <= max_total]
    _collect(report, _fan_out(_hom_one, jobs))
    outside = Partition.of(cfg.d, [cfg.n - cfg.d + 1])
    report.add(f"{outside} killed", killed(outside, cfg))
    return report


def pullback(cfg_next: WeightConfig, max_total: int = 4) -> Report:
    return pullback_check(cfg_next, max_total=max_total)


def run_suite(name: str, d: int = 2, max_size: int | None = None,
              cfg: WeightConfig | None = None) -> list[Report]:
    """Run one suite (or ``all``) with the documented default bounds."""
    if name == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(s, d, max_size, cfg))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    size = DEFAULT_SIZES.get(name) if max_size is None else max_size
    if cfg is None:
        cfg = WeightConfig(d, d + 2, default_itw(d + 2), 2)
    if name == "vanishing":
        return [vanishing(d, size)]
    if name == "pieri":
        return [pieri(d, size)]
    if name == "basis":
        return [basis(d, size, cfg)]
    if name == "closure":
        return [closure(d, size)]
    if name == "homomorphism":
        return [homomorphism(cfg, size)]
    return [pullback(cfg, size)]
