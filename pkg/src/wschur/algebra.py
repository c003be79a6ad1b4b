"""Exact arithmetic: sparse polynomials over the rationals in indexed variable
families, and the localization that only inverts ``v_ch`` and the ``w_lambda``.

Coefficients are Python ``int`` where possible and ``fractions.Fraction``
otherwise. Monomials are tuples of ``(key, exponent)`` pairs sorted by key,
where the integer key encodes family and index so that sorting by key is the
canonical variable order x < a < v < w < ap < wp < y, then by index.
"""

from __future__ import annotations

import heapq
import re
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple

from .partitions import Partition, bar


class NotDivisible(ArithmeticError):
    pass


class MembershipViolation(ArithmeticError):
    """A denominator is not a product of the allowed generators."""


class Family(IntEnum):
    X = 0
    A = 1
    V = 2
    W = 3
    AP = 4
    WP = 5
    Y = 6


PREFIX = {Family.X: "x", Family.A: "a", Family.V: "v", Family.W: "w",
          Family.AP: "ap", Family.WP: "wp", Family.Y: "y"}
_FAMILY_OF_PREFIX = {p: f for f, p in PREFIX.items()}
_SHIFT = 20
_INDEX_MASK = (1 << _SHIFT) - 1

# deg x = deg a = deg a' = deg y = 2, deg v = deg w = 0
_GRADED_WEIGHT = {Family.X: 2, Family.A: 2, Family.AP: 2, Family.Y: 2,
                  Family.V: 0, Family.W: 0, Family.WP: 0}


class VarId(NamedTuple):
    family: Family
    index: int

    @property
    def key(self) -> int:
        return (int(self.family) << _SHIFT) | self.index

    @classmethod
    def from_key(cls, key: int) -> "VarId":
        return cls(Family(key >> _SHIFT), key & _INDEX_MASK)

    @classmethod
    def parse(cls, name: str) -> "VarId":
        m = _VAR_RE.fullmatch(name)
        if not m:
            raise ValueError(f"bad variable name {name!r}")
        return cls(_FAMILY_OF_PREFIX[m.group(1)], int(m.group(2)))

    def __str__(self):
        return f"{PREFIX[self.family]}{self.index}"


def key(family: Family, index: int) -> int:
    if index < 1:
        raise ValueError(f"variable indices start at 1, got {index}")
    return (int(family) << _SHIFT) | index


def family_of(k: int) -> Family:
    return Family(k >> _SHIFT)


def index_of(k: int) -> int:
    return k & _INDEX_MASK


def var_name(k: int) -> str:
    return f"{PREFIX[family_of(k)]}{index_of(k)}"


_VAR_RE = re.compile(r"(ap|wp|x|a|v|w|y)(\d+)")


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    merged = dict(m1)
    for k, e in m2:
        merged[k] = merged.get(k, 0) + e
    return tuple(sorted(merged.items()))


def _mono_div(m1, m2):
    """``m1 / m2`` as a monomial, or None when ``m2`` does not divide ``m1``."""
    if not m2:
        return m1
    rest = dict(m1)
    for k, e in m2:
        have = rest.get(k, 0)
        if have < e:
            return None
        if have == e:
            del rest[k]
        else:
            rest[k] = have - e
    return tuple(sorted(rest.items()))


def _grlex_key(m):
    # higher total degree first; then a larger exponent on an earlier
    # variable wins (negated keys make tuple comparison do this)
    return (sum(e for _, e in m), tuple((-k, e) for k, e in m))


class _Desc:
    """Heap entry ordering monomials by decreasing graded-lex order."""

    __slots__ = ("mono", "k")

    def __init__(self, mono):
        self.mono = mono
        self.k = _grlex_key(mono)

    def __lt__(self, other):
        return self.k > other.k


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_rational(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _clean(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Treat instances as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {m: _clean(c) for m, c in terms.items() if c != 0}
        else:
            acc = {}
            for m, c in terms:
                acc[m] = acc.get(m, 0) + c
            self.terms = {m: _clean(c) for m, c in acc.items() if c != 0}

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    # constructors

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _as_rational(c)
        return cls._raw({(): c} if c != 0 else {})

    @classmethod
    def var(cls, family: Family, index: int, power: int = 1) -> "Polynomial":
        if power == 0:
            return cls._raw({(): 1})
        return cls._raw({((key(family, index), power),): 1})

    @classmethod
    def monomial(cls, exps: dict, coeff=1) -> "Polynomial":
        """``exps`` maps integer keys or VarIds to exponents."""
        items = []
        for k, e in exps.items():
            if isinstance(k, VarId):
                k = k.key
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                items.append((k, e))
        return cls({tuple(sorted(items)): coeff})

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), 0)

    def is_integral(self) -> bool:
        """True iff every coefficient is an integer."""
        return all(isinstance(c, int) for c in self.terms.values())

    def variables(self) -> set[int]:
        return {k for m in self.terms for k, _ in m}

    def families(self) -> set[Family]:
        return {family_of(k) for k in self.variables()}

    def involves(self, *families: Family) -> bool:
        wanted = {int(f) for f in families}
        return any((k >> _SHIFT) in wanted for m in self.terms for k, _ in m)

    def max_index(self, family: Family) -> int:
        return max((index_of(k) for k in self.variables() if family_of(k) == family), default=0)

    def degree(self, families=None) -> int:
        """Total degree, optionally counting only the given families.
        Zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if families is None:
            return max(sum(e for _, e in m) for m in self.terms)
        wanted = {int(f) for f in families}
        return max(sum(e for k, e in m if (k >> _SHIFT) in wanted) for m in self.terms)

    def graded_degrees(self) -> set[int]:
        """Set of graded degrees of the terms (deg x = deg a = deg y = 2,
        deg v = deg w = 0)."""
        return {sum(_GRADED_WEIGHT[family_of(k)] * e for k, e in m) for m in self.terms}

    def is_homogeneous(self, families=None) -> bool:
        if not self.terms:
            return True
        if families is None:
            degs = {sum(e for _, e in m) for m in self.terms}
        else:
            wanted = {int(f) for f in families}
            degs = {sum(e for k, e in m if (k >> _SHIFT) in wanted) for m in self.terms}
        return len(degs) == 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _clean(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = _as_rational(c)
        if c == 0:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial._raw({m: _clean(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial()
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = _mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        return Polynomial._raw({m: _clean(c) for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # division

    def exact_divide(self, q: "Polynomial") -> "Polynomial":
        """Return ``r`` with ``self == q * r``; raise NotDivisible otherwise."""
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if q.is_constant():
            return self.scale(Fraction(1) / q.constant_value())
        lm_q, lc_q = q.leading_term()
        q_rest = [(m, c) for m, c in q.terms.items() if m != lm_q]
        rem = dict(self.terms)
        heap = [_Desc(m) for m in rem]
        heapq.heapify(heap)
        quotient = {}
        while rem:
            lm = heapq.heappop(heap).mono
            if lm not in rem:
                continue
            m = _mono_div(lm, lm_q)
            if m is None:
                raise NotDivisible("leading monomial not divisible")
            c = _clean(Fraction(rem.pop(lm)) / lc_q)
            quotient[m] = c
            for mq, cq in q_rest:
                mm = _mono_mul(m, mq)
                old = rem.get(mm)
                s = (0 if old is None else old) - c * cq
                if s:
                    rem[mm] = _clean(s)
                    if old is None:
                        heapq.heappush(heap, _Desc(mm))
                elif old is not None:
                    del rem[mm]
        return Polynomial._raw(quotient)

    def divides(self, p: "Polynomial") -> bool:
        try:
            p.exact_divide(self)
        except NotDivisible:
            return False
        return True

    # substitution

    def substitute(self, mapping) -> "Polynomial | LocalizedElem":
        """Substitute variables (integer keys or VarIds) by Polynomials,
        LocalizedElems or rationals. Unmapped variables are left alone."""
        return substitute(self, mapping)

    def rename(self, mapping: dict) -> "Polynomial":
        """Substitution where every image is ``coeff * variable`` (or a
        rational constant); cheap relabelling of the terms."""
        return _monomial_map(self, mapping)

    def specialize_zero(self, *families: Family) -> "Polynomial":
        """Set every variable of the given families to zero."""
        wanted = {int(f) for f in families}
        return Polynomial._raw({m: c for m, c in self.terms.items()
                                if not any((k >> _SHIFT) in wanted for k, _ in m)})

    def coefficient_in(self, families) -> dict:
        """Split by the monomial in ``families``: map that monomial to the
        coefficient polynomial in the remaining variables."""
        wanted = {int(f) for f in families}
        out = {}
        for m, c in self.terms.items():
            inner = tuple((k, e) for k, e in m if (k >> _SHIFT) in wanted)
            outer = tuple((k, e) for k, e in m if (k >> _SHIFT) not in wanted)
            out.setdefault(inner, {})[outer] = c
        return {m: Polynomial._raw(t) for m, t in out.items()}

    # rendering

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"

    def to_json(self) -> list:
        return [{"coeff": _render_rational(c),
                 "mono": {var_name(k): e for k, e in m}}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, terms) -> "Polynomial":
        out = []
        for t in terms:
            mono = tuple(sorted((VarId.parse(n).key, int(e)) for n, e in t["mono"].items() if e))
            out.append((mono, Fraction(t["coeff"])))
        return cls(out)


ZERO = Polynomial()
ONE = Polynomial.const(1)


def X(i):
    return Polynomial.var(Family.X, i)


def A(l):
    return Polynomial.var(Family.A, l)


def V(i):
    return Polynomial.var(Family.V, i)


def W(l):
    return Polynomial.var(Family.W, l)


def AP(l):
    return Polynomial.var(Family.AP, l)


def WP(l):
    return Polynomial.var(Family.WP, l)


def Y(i):
    return Polynomial.var(Family.Y, i)


def family_sum(family: Family, indices) -> Polynomial:
    return Polynomial([(((key(family, i), 1),), 1) for i in indices])


def _render_rational(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _render_mono(m) -> str:
    return "*".join(var_name(k) if e == 1 else f"{var_name(k)}^{e}" for k, e in m)


def render(p: Polynomial) -> str:
    """Canonical text, terms in decreasing graded-lex order."""
    if not p.terms:
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        mag = -c if c < 0 else c
        body = _render_mono(m)
        if not body:
            text = _render_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_render_rational(mag)}*{body}"
        if not parts:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append((" - " if c < 0 else " + ") + text)
    return "".join(parts)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of :func:`render` (also accepts extra whitespace)."""
    text = text.strip()
    if text == "0":
        return Polynomial()
    out = []
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        sign, body = m.group(1), m.group(2).strip()
        if sign is None and not first:
            raise ValueError(f"missing operator before {body!r}")
        first = False
        pos = m.end()
        coeff = Fraction(-1 if sign == "-" else 1)
        mono = Counter()
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {body!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            mono[VarId.parse(name).key] += int(power) if power else 1
        out.append((tuple(sorted(mono.items())), coeff))
    return Polynomial(out)


# localization

@dataclass(frozen=True, order=True)
class DenomGen:
    """An allowed denominator generator.

    ``kind`` is ``"vCh"`` (v_1 + ... + v_d), ``"wLambda"`` (sum of w over the
    bar-sequence of ``partition``) or ``"wpCh"`` (w'_1 + ... + w'_d).
    """

    kind: str
    d: int
    partition: Partition | None = None

    def __post_init__(self):
        if self.kind not in ("vCh", "wLambda", "wpCh"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "wLambda":
            if self.partition is None or self.partition.d != self.d:
                raise ValueError("wLambda needs a partition with matching d")
        elif self.partition is not None:
            raise ValueError(f"{self.kind} takes no partition")

    @classmethod
    def vch(cls, d):
        return cls("vCh", d)

    @classmethod
    def wlam(cls, lam: Partition):
        return cls("wLambda", lam.d, lam)

    @classmethod
    def wpch(cls, d):
        return cls("wpCh", d)

    def expand(self) -> Polynomial:
        return _expand_gen(self)

    def to_json(self) -> dict:
        if self.kind == "wLambda":
            return {"kind": self.kind, "partition": self.partition.to_json()}
        return {"kind": self.kind, "d": self.d}

    @classmethod
    def from_json(cls, obj):
        if obj["kind"] == "wLambda":
            rows = obj["partition"]
            return cls.wlam(Partition(len(rows), tuple(rows)))
        return cls(obj["kind"], int(obj["d"]))

    def __str__(self):
        if self.kind == "wLambda":
            return f"w_{self.partition}"
        return {"vCh": "v_ch", "wpCh": "wp_ch"}[self.kind]


_GEN_CACHE: dict = {}


def _expand_gen(g: DenomGen) -> Polynomial:
    p = _GEN_CACHE.get(g)
    if p is None:
        if g.kind == "vCh":
            p = family_sum(Family.V, range(1, g.d + 1))
        elif g.kind == "wpCh":
            p = family_sum(Family.WP, range(1, g.d + 1))
        else:
            p = family_sum(Family.W, bar(g.partition))
        _GEN_CACHE[g] = p
    return p


def recognize_generator(p: Polynomial, d: int):
    """Write ``p`` as ``scalar * g`` for an allowed generator ``g``, returning
    ``(scalar, g)``; ``g`` is None when ``p`` is a nonzero constant.

    Raises MembershipViolation otherwise.
    """
    if p.is_zero():
        raise MembershipViolation("zero denominator")
    if p.is_constant():
        return p.constant_value(), None
    coeffs = set(p.terms.values())
    if len(coeffs) != 1 or any(len(m) != 1 or m[0][1] != 1 for m in p.terms):
        raise MembershipViolation(f"{p} is not an allowed denominator")
    scalar = coeffs.pop()
    keys = [m[0][0] for m in p.terms]
    fams = {family_of(k) for k in keys}
    idx = sorted(index_of(k) for k in keys)
    if len(keys) == d and len(fams) == 1:
        fam = fams.pop()
        if fam == Family.W:
            return scalar, DenomGen.wlam(Partition.from_bar(idx))
        if fam == Family.V and idx == list(range(1, d + 1)):
            return scalar, DenomGen.vch(d)
        if fam == Family.WP and idx == list(range(1, d + 1)):
            return scalar, DenomGen.wpch(d)
    raise MembershipViolation(f"{p} is not an allowed denominator")


def _den_key(den: Counter):
    return tuple(sorted(den.items()))


_DEN_POLY_CACHE: dict = {}


def expand_denominator(den) -> Polynomial:
    """Product of the expanded generators in the multiset ``den``."""
    if isinstance(den, Counter):
        den = _den_key(den)
    p = _DEN_POLY_CACHE.get(den)
    if p is None:
        p = ONE
        for g, mult in den:
            p = p * (g.expand() ** mult)
        if len(_DEN_POLY_CACHE) < 4096:
            _DEN_POLY_CACHE[den] = p
    return p


class LocalizedElem:
    """``numerator / product of generators``.

    Equality is by cross-multiplication. :meth:`normalize` cancels every
    generator that divides the numerator; since the generators are pairwise
    non-associate linear forms, the result is a unique reduced form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.const(num)
        self.num = num
        if den is None or num.is_zero():
            self.den = ()
        elif isinstance(den, tuple) and all(isinstance(t, tuple) for t in den):
            self.den = den
        else:
            c = Counter(den) if not isinstance(den, Counter) else +den
            self.den = _den_key(c)

    @classmethod
    def over(cls, num, *gens: DenomGen) -> "LocalizedElem":
        return cls(num, Counter(gens))

    @classmethod
    def lift(cls, e) -> "LocalizedElem":
        if isinstance(e, LocalizedElem):
            return e
        return cls(e)

    @property
    def denominator(self) -> Counter:
        return Counter(dict(self.den))

    def generators(self) -> set[DenomGen]:
        return {g for g, _ in self.den}

    def denominator_poly(self) -> Polynomial:
        return expand_denominator(self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def as_polynomial(self) -> Polynomial:
        """The element as a Polynomial (after cancellation); raises if a
        denominator survives."""
        e = self if not self.den else self.normalize()
        if e.den:
            raise NotDivisible(f"{self} has a nontrivial denominator")
        return e.num

    def __bool__(self):
        return not self.num.is_zero()

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, LocalizedElem):
            return other
        if isinstance(other, Polynomial):
            return LocalizedElem(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LocalizedElem(Polynomial.const(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return LocalizedElem(self.num + other.num, self.den)
        d1, d2 = Counter(dict(self.den)), Counter(dict(other.den))
        lcm = d1 | d2
        n1 = self.num * expand_denominator(lcm - d1)
        n2 = other.num * expand_denominator(lcm - d2)
        return LocalizedElem(n1 + n2, _den_key(lcm))

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElem(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LocalizedElem(self.num.scale(other), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = self.num * other.num
        if num.is_zero():
            return LocalizedElem(num)
        if not other.den:
            return LocalizedElem(num, self.den)
        if not self.den:
            return LocalizedElem(num, other.den)
        return LocalizedElem(num, Counter(dict(self.den)) + Counter(dict(other.den)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        num = self.num ** k
        return LocalizedElem(num, Counter({g: m * k for g, m in self.den}) if k else None)

    def divide_by_generators(self, *gens: DenomGen) -> "LocalizedElem":
        return self * LocalizedElem.over(ONE, *gens)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return loc_equal(self, other)

    __hash__ = None

    def normalize(self) -> "LocalizedElem":
        return loc_normalize(self)

    def substitute(self, mapping) -> "LocalizedElem":
        return substitute(self, mapping)

    def rename(self, mapping) -> "LocalizedElem":
        """Monomial relabelling of the numerator; every generator's image must
        again be recognized as an allowed generator or a constant."""
        num = _monomial_map(self.num, mapping)
        if not self.den:
            return LocalizedElem(num)
        return _reattach(num, self.den, lambda g: _monomial_map(g.expand(), mapping))

    def variables(self) -> set[int]:
        out = set(self.num.variables())
        for g, _ in self.den:
            out |= g.expand().variables()
        return out

    def involves(self, *families) -> bool:
        if self.num.involves(*families):
            return True
        return any(g.expand().involves(*families) for g, _ in self.den)

    def __str__(self):
        return render_localized(self)

    def __repr__(self):
        return f"LocalizedElem({render_localized(self)!r})"

    def to_json(self) -> dict:
        den = []
        for g, mult in self.den:
            den.extend([g.to_json()] * mult)
        return {"terms": self.num.to_json(), "denom": den}

    @classmethod
    def from_json(cls, obj) -> "LocalizedElem":
        return cls(Polynomial.from_json(obj["terms"]),
                   Counter(DenomGen.from_json(g) for g in obj.get("denom", [])))


def _reattach(num, den, image_of_gen):
    """Map each generator through ``image_of_gen`` and rebuild the fraction."""
    gens = Counter()
    scalar = Fraction(1)
    for g, mult in den:
        img = image_of_gen(g)
        s, h = recognize_generator(img, g.d)
        scalar *= Fraction(s) ** mult
        if h is not None:
            gens[h] += mult
    return LocalizedElem(num.scale(1 / scalar), gens)


def loc_normalize(e: LocalizedElem) -> LocalizedElem:
    """Cancel generators dividing the numerator."""
    if not e.den or e.num.is_zero():
        return LocalizedElem(e.num)
    num = e.num
    left = Counter()
    for g, mult in e.den:
        gp = g.expand()
        for used in range(mult):
            try:
                num = num.exact_divide(gp)
            except NotDivisible:
                left[g] += mult - used
                break
    return LocalizedElem(num, left)


def loc_equal(e1, e2) -> bool:
    e1, e2 = LocalizedElem.lift(e1), LocalizedElem.lift(e2)
    if e1.den == e2.den:
        return e1.num == e2.num
    d1, d2 = Counter(dict(e1.den)), Counter(dict(e2.den))
    common = d1 & d2
    r1, r2 = d1 - common, d2 - common
    return e1.num * expand_denominator(r2) == e2.num * expand_denominator(r1)


def render_localized(e: LocalizedElem) -> str:
    """``numerator`` alone, or ``(numerator)/(g1)*(g2)^k`` with each
    generator expanded; run :func:`loc_normalize` first for a canonical form."""
    num = render(e.num)
    if not e.den:
        return num
    dens = []
    for g, mult in e.den:
        text = f"({render(g.expand())})"
        dens.append(text if mult == 1 else f"{text}^{mult}")
    return f"({num})/" + "*".join(dens)


def canonical(e) -> str:
    return render_localized(loc_normalize(LocalizedElem.lift(e)))


def integral(e) -> bool:
    """All numerator coefficients are integers."""
    if isinstance(e, LocalizedElem):
        e = e.num
    return e.is_integral()


# substitution

def _mapping_keys(mapping):
    out = {}
    for k, img in mapping.items():
        if isinstance(k, VarId):
            k = k.key
        out[k] = img
    return out


def _monomial_map(p: Polynomial, mapping) -> Polynomial:
    """Substitute variables by ``coeff * monomial`` images (or constants)."""
    mapping = _mapping_keys(mapping)
    images = {}
    for k, img in mapping.items():
        if isinstance(img, (int, Fraction)):
            images[k] = ((), _as_rational(img))
            continue
        if isinstance(img, LocalizedElem):
            img = img.as_polynomial()
        if len(img.terms) > 1:
            raise ValueError(f"{var_name(k)} maps to a non-monomial")
        if not img.terms:
            images[k] = ((), 0)
        else:
            (m, c), = img.terms.items()
            images[k] = (m, c)
    out = {}
    for m, c in p.terms.items():
        mono = ()
        coeff = c
        for k, e in m:
            img = images.get(k)
            if img is None:
                mono = _mono_mul(mono, ((k, e),))
                continue
            im, ic = img
            if ic == 0:
                coeff = 0
                break
            coeff = coeff * ic ** e
            if im:
                mono = _mono_mul(mono, tuple((kk, ee * e) for kk, ee in im))
        if coeff != 0:
            out[mono] = out.get(mono, 0) + coeff
    return Polynomial({m: c for m, c in out.items()})


def substitute(p, mapping):
    """Ring homomorphism sending each mapped variable to its image.

    ``p`` may be a Polynomial (result is a Polynomial when every image is) or
    a LocalizedElem (generators are mapped and re-recognized).
    """
    mapping = _mapping_keys(mapping)
    if isinstance(p, LocalizedElem):
        num = substitute(p.num, mapping)
        if not p.den:
            return LocalizedElem.lift(num)
        num = LocalizedElem.lift(num)
        acc = num
        for g, mult in p.den:
            img = LocalizedElem.lift(substitute(g.expand(), mapping))
            # 1/img where img = N/D: need N recognizable
            s, h = recognize_generator(img.num, g.d)
            inv = LocalizedElem(expand_denominator(img.den).scale(Fraction(1) / s),
                                Counter({h: 1}) if h is not None else None)
            acc = acc * inv ** mult
        return acc
    if not any(isinstance(img, LocalizedElem) and img.den for img in mapping.values()):
        return _substitute_poly(p, {k: (img.as_polynomial() if isinstance(img, LocalizedElem) else img)
                                    for k, img in mapping.items()})
    return _substitute_loc(p, mapping)


def _coerce_poly(img):
    if isinstance(img, Polynomial):
        return img
    return Polynomial.const(img)


def _substitute_poly(p: Polynomial, mapping) -> Polynomial:
    images = {k: _coerce_poly(v) for k, v in mapping.items()}
    powers: dict = {}

    def power(k, e):
        got = powers.get((k, e))
        if got is None:
            got = images[k] ** e
            powers[(k, e)] = got
        return got

    acc = {}
    for m, c in p.terms.items():
        kept = []
        term = None
        for k, e in m:
            if k in images:
                f = power(k, e)
                term = f if term is None else term * f
            else:
                kept.append((k, e))
        base = Polynomial._raw({tuple(kept): c})
        term = base if term is None else term * base
        for mm, cc in term.terms.items():
            acc[mm] = acc.get(mm, 0) + cc
    return Polynomial(acc)


def _substitute_loc(p: Polynomial, mapping) -> LocalizedElem:
    images = {k: LocalizedElem.lift(v if not isinstance(v, (int, Fraction)) else Polynomial.const(v))
              for k, v in mapping.items()}
    # common denominator is the lcm of the per-term denominators
    term_dens = []
    lcm = Counter()
    for m in p.terms:
        td = Counter()
        for k, e in m:
            if k in images:
                for g, mult in images[k].den:
                    td[g] += mult * e
        term_dens.append(td)
        lcm |= td
    powers: dict = {}

    def power(k, e):
        got = powers.get((k, e))
        if got is None:
            got = images[k].num ** e
            powers[(k, e)] = got
        return got

    total = Polynomial()
    for (m, c), td in zip(p.terms.items(), term_dens):
        kept = []
        term = Polynomial._raw({(): c})
        for k, e in m:
            if k in images:
                term = term * power(k, e)
            else:
                kept.append((k, e))
        term = term * Polynomial._raw({tuple(kept): 1}) * expand_denominator(lcm - td)
        total = total + term
    return LocalizedElem(total, lcm)


def is_symmetric(e, d: int) -> bool:
    """Invariance under simultaneous adjacent swaps (x_i, v_i) <-> (x_j, v_j)."""
    e = LocalizedElem.lift(e)
    for i in range(1, d):
        swap = {key(Family.X, i): X(i + 1), key(Family.X, i + 1): X(i),
                key(Family.V, i): V(i + 1), key(Family.V, i + 1): V(i)}
        if not loc_equal(e.rename(swap), e):
            return False
    return True
