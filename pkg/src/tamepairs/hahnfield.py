"""The ordered field of finite-support Hahn series and its monomial groups.

A :class:`Series` is a finite sum ``sum c_i x^{e_i}`` with rational exponents,
ordered by the sign of its leading coefficient, so ``x`` is infinitely large
relative to the constants.  The leading exponent is a valuation; presented
with the exponent order reversed it becomes order-compatible.

Finite support means the field is neither real closed nor closed under
inversion, and its positive cone is not divisible.  Everything here only
uses leading-term data and exact finite arithmetic, and reports carry that
caveat in their header.  Inverses are available as :class:`PrecSeries`
values with an explicit window of exact terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InsufficientPrecision,
    NonPositive,
    NotInValuationRing,
    ZeroElement,
)
from .harness import Generator
from .ogroup import HahnCtx, HahnElt, _canonical_terms, format_terms
from .report import Report, failed, passed, skipped
from .rng import SplitMix64
from .scalars import QQ, ZERO, FieldCtx, Rational, Scalar, coerce_scalar, rat

DESK_SCALE_CAVEAT = (
    "finite-support Hahn field: ordered, not real closed, positive cone not divisible; "
    "verdicts use leading-term data and exact finite arithmetic only"
)


class Series(HahnElt):
    """A finite Hahn series; a :class:`HahnElt` that also multiplies."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, Series):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx.field} vs {other.ctx.field}")
            return self._make(_mul_terms(self.terms, other.terms))
        if isinstance(other, HahnElt):
            return NotImplemented
        try:
            s = coerce_scalar(other, self.ctx.field)
        except (TypeError, FieldMismatch):
            return NotImplemented
        return self.smul(s)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = series_ring(self.ctx.field).one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __add__(self, other):
        if not isinstance(other, HahnElt):
            try:
                other = self._make(_const_terms(coerce_scalar(other, self.ctx.field)))
            except (TypeError, FieldMismatch):
                return NotImplemented
        return HahnElt.__add__(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, HahnElt):
            try:
                other = self._make(_const_terms(coerce_scalar(other, self.ctx.field)))
            except (TypeError, FieldMismatch):
                return NotImplemented
        return HahnElt.__sub__(self, other)

    def __rsub__(self, other):
        return (-self) + other

    def valuation(self) -> Rational:
        return valuation(self)

    @property
    def leading_coeff(self) -> Scalar:
        if not self.terms:
            raise ZeroElement("leading coefficient of zero")
        return self.terms[0][1]


def _const_terms(s: Scalar) -> tuple:
    return ((ZERO, s),) if s else ()


def _mul_terms(s, t) -> tuple:
    acc: dict = {}
    for e1, c1 in s:
        for e2, c2 in t:
            e = e1 + e2
            p = c1 * c2
            acc[e] = acc[e] + p if e in acc else p
    return _canonical_terms(acc)


@dataclass(frozen=True)
class SeriesRing:
    field: FieldCtx = QQ

    @property
    def ctx(self) -> HahnCtx:
        return HahnCtx(self.field)

    def element(self, terms) -> Series:
        if isinstance(terms, dict):
            terms = terms.items()
        acc: dict = {}
        for e, c in terms:
            e = rat(e)
            c = coerce_scalar(c, self.field)
            acc[e] = acc[e] + c if e in acc else c
        return Series(self.ctx, _canonical_terms(acc))

    def monomial(self, e, c=1) -> Series:
        return self.element({e: c})

    def const(self, c) -> Series:
        return self.element({0: c})

    @property
    def zero(self) -> Series:
        return Series(self.ctx, ())

    @property
    def one(self) -> Series:
        return self.const(1)

    def parse(self, text: str) -> Series:
        g = self.ctx.parse(text)
        return Series(g.ctx, g.terms)

    def lift(self, g: HahnElt) -> Series:
        if g.ctx != self.ctx:
            raise FieldMismatch(f"{g.ctx} vs {self.ctx}")
        return g if isinstance(g, Series) else Series(g.ctx, g.terms)


@lru_cache(maxsize=None)
def series_ring(field: FieldCtx = QQ) -> SeriesRing:
    return SeriesRing(field)


def as_series(g, field: FieldCtx | None = None) -> Series:
    if isinstance(g, Series):
        return g
    if isinstance(g, HahnElt):
        return Series(g.ctx, g.terms)
    f = field or QQ
    if isinstance(g, str):
        return series_ring(f).parse(g)
    return series_ring(f).const(g)


def series_arith(op: str, a: Series, b: Series | None = None) -> Series:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "abs":
        return abs(a)
    raise ValueError(f"unknown series operation {op!r}")


# valuation -----------------------------------------------------------------------------


def valuation(a: Series) -> Rational:
    """Leading exponent of a nonzero series."""
    if not a.terms:
        raise ZeroElement("valuation of zero")
    return a.terms[0][0]


@dataclass(frozen=True)
class RevValue:
    """A leading exponent viewed in the value group with the order reversed."""

    exponent: Rational

    def __lt__(self, other):
        return self.exponent > other.exponent

    def __le__(self, other):
        return self.exponent >= other.exponent

    def __gt__(self, other):
        return self.exponent < other.exponent

    def __ge__(self, other):
        return self.exponent <= other.exponent

    def __add__(self, other):
        return RevValue(self.exponent + other.exponent)

    def __str__(self):
        return f"v={self.exponent}"


def rev_value(a: Series) -> RevValue:
    return RevValue(valuation(a))


def v_compat_check(field: FieldCtx = QQ, seed: int = 0, cases: int = 1000) -> Report:
    """Valuation axioms and order-compatibility of the leading exponent, sampled."""
    rep = Report("valuation")
    rep.header = {"field": str(field), "seed": seed, "cases": cases, "caveat": DESK_SCALE_CAVEAT}
    names = ("v_multiplicative", "v_ultrametric", "v_order_compatible")
    tallies = {n: [0, 0, None] for n in names}

    def rec(n, ok, w):
        t = tallies[n]
        t[0] += 1
        if not ok:
            t[1] += 1
            if t[2] is None:
                t[2] = w

    for i in range(cases):
        gen = Generator(SplitMix64(seed, i, "valuation"), 4)
        a, b = gen.series(field), gen.series(field)
        rec("v_multiplicative", valuation(a * b) == valuation(a) + valuation(b), f"{a} ; {b}")
        s = a + b
        if s:
            va, vb, vs = valuation(a), valuation(b), valuation(s)
            ok = vs <= max(va, vb) and (va == vb or vs == max(va, vb))
            rec("v_ultrametric", ok, f"{a} ; {b}")
        pa, pb = abs(a), abs(b)
        lo, hi = (pa, pb) if pa <= pb else (pb, pa)
        # 0 < lo <= hi forces the reversed value of hi to be at most that of lo
        rec("v_order_compatible", rev_value(hi) <= rev_value(lo), f"{lo} ; {hi}")
    for n in names:
        count, bad, w = tallies[n]
        rep.add(passed(n, samples=count) if not bad else failed(n, "counterexample", w, samples=count,
                                                                counterexamples=bad))
    return rep


# truncated inverses --------------------------------------------------------------------


class PrecSeries:
    """A series known exactly at exponents ``>= floor``.

    ``floor`` is None for exact values.  The window is closed: the term at
    exponent ``floor`` itself is exact, the unknown error lies strictly
    below it.  Arithmetic propagates the window, and the truncated flag is
    sticky.  Comparisons whose deciding term lies outside the window raise
    :class:`InsufficientPrecision`.
    """

    __slots__ = ("series", "floor", "truncated")

    def __init__(self, series: Series, floor=None, truncated: bool = False):
        self.series = series
        self.floor = None if floor is None else rat(floor)
        self.truncated = truncated or floor is not None
        if self.floor is not None:
            self.series = series.truncate_below(self.floor)

    @classmethod
    def exact(cls, s: Series) -> "PrecSeries":
        return cls(s, None, False)

    @property
    def precision(self):
        """Width of the exact window below the leading exponent."""
        if self.floor is None or not self.series:
            return None
        return valuation(self.series) - self.floor

    @staticmethod
    def _lift(x):
        return x if isinstance(x, PrecSeries) else PrecSeries.exact(x)

    def __add__(self, other):
        o = self._lift(other)
        return PrecSeries(self.series + o.series, _max_floor(self.floor, o.floor),
                          self.truncated or o.truncated)

    __radd__ = __add__

    def __neg__(self):
        return PrecSeries(-self.series, self.floor, self.truncated)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        floors = []
        if o.floor is not None:
            if not self.series and self.floor is None:
                return PrecSeries.exact(self.series)
            floors.append(_lead_or(self.series, self.floor) + o.floor)
        if self.floor is not None:
            if not o.series and o.floor is None:
                return PrecSeries.exact(o.series)
            floors.append(_lead_or(o.series, o.floor) + self.floor)
        if self.floor is not None and o.floor is not None:
            floors.append(self.floor + o.floor)
        return PrecSeries(self.series * o.series, min(floors) if floors else None,
                          self.truncated or o.truncated)

    __rmul__ = __mul__

    def sign(self) -> int:
        if self.series and (self.floor is None or self.series.terms[0][0] >= self.floor):
            return self.series.sign()
        if self.floor is None:
            return 0
        raise InsufficientPrecision(f"sign undecided above the precision floor {self.floor}")

    def compare(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def leading_term(self):
        if not self.series:
            raise InsufficientPrecision("no term is known inside the window")
        return self.series.terms[0]

    def __str__(self):
        body = format_terms(self.series.terms)
        if self.floor is None:
            return body
        return f"{body} + (terms below x^{_fmt_exp(self.floor)})"

    def __repr__(self):
        return f"PrecSeries('{self}')"


def _max_floor(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _lead_or(s: Series, floor):
    return valuation(s) if s else floor


def series_inv(a: Series, precision) -> PrecSeries:
    """``1/a`` exact at exponents ``>= -v(a) - precision``.

    Writes ``a = c x^v (1 + u)`` with ``u`` supported at negative exponents
    and sums the geometric series in ``-u`` until its terms leave the window.
    """
    a = as_series(a)
    precision = rat(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    if not a:
        raise DivisionByZero("inverse of the zero series")
    v, c = a.terms[0]
    cinv = c.inv()
    if len(a.terms) == 1:
        return PrecSeries.exact(a._make(((-v, cinv),)))
    floor = -precision
    neg_u = tuple((e - v, -(ci * cinv)) for e, ci in a.terms[1:])
    acc: dict = {ZERO: c.field.one}
    power = ((ZERO, c.field.one),)
    while True:
        power = tuple(t for t in _mul_terms(power, neg_u) if t[0] >= floor)
        if not power:
            break
        for e, ci in power:
            acc[e] = acc[e] + ci if e in acc else ci
    body = tuple((e - v, ci * cinv) for e, ci in _canonical_terms(acc))
    return PrecSeries(a._make(body), floor - v, True)


# monomial groups ---------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialGroup:
    """``XQ`` when ``base`` is None, else ``CoeffXQ(base)``: ``{base^p x^q}``."""

    base: Rational | None = None

    def __post_init__(self):
        if self.base is not None:
            b = rat(self.base)
            if b <= 0 or b == 1:
                raise ValueError("CoeffXQ base must be a positive rational other than 1")
            object.__setattr__(self, "base", b)

    @property
    def kind(self) -> str:
        return "xq" if self.base is None else "coeff_xq"

    def element(self, p, q) -> "Monomial":
        p = rat(p)
        if self.base is None and p:
            raise ValueError("XQ elements have no coefficient exponent")
        return Monomial(self, p, rat(q))

    def x(self, q) -> "Monomial":
        return Monomial(self, ZERO, rat(q))

    @property
    def one(self) -> "Monomial":
        return Monomial(self, ZERO, ZERO)

    def __str__(self):
        return "XQ" if self.base is None else f"CoeffXQ({self.base})"


XQ = MonomialGroup()


def coeff_xq(base) -> MonomialGroup:
    return MonomialGroup(rat(base))


@dataclass(frozen=True)
class Monomial:
    """The positive element ``base^p * x^q`` of a monomial group."""

    group: MonomialGroup
    p: Rational
    q: Rational

    def __mul__(self, other):
        return Monomial(self.group, self.p + other.p, self.q + other.q)

    def inv(self):
        return Monomial(self.group, -self.p, -self.q)

    def __truediv__(self, other):
        return self * other.inv()

    def compare(self, other) -> int:
        """Exact comparison with a monomial or a series."""
        if isinstance(other, Monomial):
            if self.q != other.q:
                return 1 if self.q > other.q else -1
            if self.p == other.p:
                return 0
            up = (self.p > other.p) == (self.group.base > 1)
            return 1 if up else -1
        return compare_monomial(self, as_series(other))

    def __eq__(self, other):
        if isinstance(other, Monomial):
            return self.group == other.group and self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self):
        return hash((self.group, self.p, self.q))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def coefficient(self, field: FieldCtx = QQ) -> Scalar | None:
        """``base^p`` as a field element when it is one (``p`` an integer)."""
        if not self.p:
            return field.one
        if self.p.denominator != 1:
            return None
        return field.scalar(self.group.base ** int(self.p))

    def to_series(self, field: FieldCtx = QQ) -> Series | None:
        c = self.coefficient(field)
        return None if c is None else series_ring(field).monomial(self.q, c)

    def __str__(self):
        mono = f"x^{_fmt_exp(self.q)}"
        if not self.p:
            return mono
        return f"{self.group.base}^{_fmt_exp(self.p)}*{mono}"


def _fmt_exp(e) -> str:
    e = mpq(e)
    return str(e) if e.denominator == 1 else f"({e})"


def pow_cmp(base: Rational, p: Rational, c: Scalar) -> int:
    """Sign of ``base^p - c`` for positive rational ``base``, exactly.

    With ``p = a/b`` (``b > 0``) and ``c > 0`` this compares ``base^a`` with
    ``c^b``, since ``t -> t^b`` is increasing on the positive reals.
    """
    if c.sign() <= 0:
        return 1
    a, b = int(p.numerator), int(p.denominator)
    lhs = c.field.scalar(mpq(base) ** a)
    return lhs.cmp(c ** b)


# exact power decisions -------------------------------------------------------------------


def coprime_basis(numbers) -> list:
    """A gcd-free basis of the integers > 1 in ``numbers``.

    Every input is a product of powers of the returned pairwise coprime
    integers.
    """
    basis: list = []
    stack = [int(n) for n in numbers if int(n) > 1]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        for i, b in enumerate(basis):
            g = math.gcd(x, b)
            if g > 1:
                basis.pop(i)
                stack.extend(t for t in (g, b // g, x // g) if t > 1)
                break
        else:
            basis.append(x)
    return sorted(basis)


def _exponents(n: int, basis) -> list:
    out = []
    for t in basis:
        e = 0
        while n % t == 0:
            n //= t
            e += 1
        out.append(e)
    if n != 1:
        raise AssertionError("coprime basis does not cover the input")
    return out


def rational_log(base: Rational, c: Rational) -> Rational | None:
    """The rational ``p`` with ``base^p == c``, or None (both positive rationals)."""
    base, c = mpq(base), mpq(c)
    if c <= 0:
        return None
    if c == 1:
        return ZERO
    nums = [base.numerator, base.denominator, c.numerator, c.denominator]
    basis = coprime_basis(nums)
    vb = [x - y for x, y in zip(_exponents(int(base.numerator), basis),
                                _exponents(int(base.denominator), basis))]
    vc = [x - y for x, y in zip(_exponents(int(c.numerator), basis),
                                _exponents(int(c.denominator), basis))]
    p = None
    for eb, ec in zip(vb, vc):
        if eb == 0:
            if ec != 0:
                return None
            continue
        ratio = mpq(ec, eb)
        if p is None:
            p = ratio
        elif p != ratio:
            return None
    return p


def scalar_log(base: Rational, c: Scalar) -> Rational | None:
    """The rational ``p`` with ``base^p == c`` for a positive scalar ``c``, or None."""
    if c.sign() <= 0:
        return None
    if not c.b:
        return rational_log(base, c.a)
    if c.a:
        # a + b*sqrt(d) with a, b != 0 has no rational power in Q
        return None
    p2 = rational_log(base, (c * c).a)
    return None if p2 is None else p2 / 2


def floor_log(base: Rational, c: Scalar) -> int:
    """The integer ``p0`` with ``base^p0 <= c < base^(p0+1)`` (reversed for base < 1)."""
    base = mpq(base)
    approx = float(c.a) + (float(c.b) * math.sqrt(c.field.d) if c.b else 0.0)
    guess = math.floor(math.log(approx) / math.log(float(base))) if approx > 0 else 0
    up = base > 1

    def below(k):  # base^k is on the "small exponent" side of c
        s = pow_cmp(base, mpq(k), c)
        return s <= 0 if up else s >= 0

    k = guess
    while not below(k):
        k -= 1
    while below(k + 1):
        k += 1
    return k


# standard part on the positive cone ------------------------------------------------------


EXACT = "exact"
NEAREST_BELOW = "nearest_below"
NEAREST_ABOVE = "nearest_above"
NO_NEAREST = "no_nearest"


@dataclass(frozen=True)
class PositiveSt:
    kind: str
    element: Monomial | None = None
    residual: Scalar | None = None
    approx: Monomial | None = None

    @property
    def defined(self) -> bool:
        return self.kind != NO_NEAREST

    def to_dict(self) -> dict:
        out = {"case": self.kind}
        if self.element is not None:
            out["value"] = str(self.element)
        if self.residual is not None:
            out["residual"] = str(self.residual)
        if self.approx is not None:
            out["candidate"] = str(self.approx)
        return out

    def __str__(self):
        if self.defined:
            name = {EXACT: "Exact", NEAREST_BELOW: "NearestBelow", NEAREST_ABOVE: "NearestAbove"}[self.kind]
            return f"{name}({self.element})"
        return f"NoNearest(candidate {self.approx}, multiplicative residual {self.residual})"


def _classify(m: Monomial, r: Series) -> str:
    s = compare_monomial(m, r)
    if s == 0:
        return EXACT
    return NEAREST_BELOW if s < 0 else NEAREST_ABOVE


def compare_monomial(m: Monomial, r: Series) -> int:
    """Sign of ``m - r`` for a monomial and a series, exactly."""
    if not r:
        return 1
    v, c = r.terms[0]
    if m.q != v:
        if m.q > v:
            return 1
        return -c.sign()
    if m.group.base is None or not m.p:
        beta_cmp = c.field.one.cmp(c)
    else:
        beta_cmp = pow_cmp(m.group.base, m.p, c)
    if beta_cmp:
        return int(beta_cmp)
    tail = r.terms[1:]
    return -tail[0][1].sign() if tail else 0


def st_positive(G: MonomialGroup, r: Series) -> PositiveSt:
    """Nearest element of ``G`` to the positive series ``r``, or a certified failure."""
    r = as_series(r)
    if r.sign() <= 0:
        raise NonPositive(f"{r} is not positive")
    v, c = r.terms[0]
    if G.base is None:
        m = G.x(v)
        return PositiveSt(_classify(m, r), m)
    p = scalar_log(G.base, c)
    if p is not None:
        m = Monomial(G, p, v)
        return PositiveSt(_classify(m, r), m)
    p0 = floor_log(G.base, c)
    residual = c * c.field.scalar(mpq(G.base) ** (-p0))
    return PositiveSt(NO_NEAREST, None, residual, Monomial(G, mpq(p0), v))


def refute_monomial(G: MonomialGroup, r: Series, g: Monomial):
    """``h`` in ``G`` with ``h > 1`` and ``r >= h*g`` or ``g >= h*r``, or None.

    This is the multiplicative form of refuting ``g`` as a nearest element:
    the ratio of ``r`` and ``g`` is bounded below by an element of ``G`` that
    exceeds 1.
    """
    r = as_series(r)
    v, c = r.terms[0]
    base = G.base
    if base is None:
        if g.q != v:
            return G.x(1)
        return None
    unit = Monomial(G, mpq(1) if base > 1 else mpq(-1), ZERO)
    if g.q != v:
        return unit
    s = pow_cmp(base, g.p, c)
    if s == 0:
        return None
    # move t from g.p toward log_base c until base^t is still strictly on g's side
    toward_c_up = (s < 0) == (base > 1)
    den = 1
    while True:
        t = g.p + (mpq(1, den) if toward_c_up else -mpq(1, den))
        st_ = pow_cmp(base, t, c)
        if (s < 0 and st_ < 0) or (s > 0 and st_ > 0):
            return Monomial(G, abs(t - g.p) * (1 if base > 1 else -1), ZERO)
        den *= 2


def verify_monomial_refutation(r: Series, g: Monomial, h: Monomial) -> bool:
    """Exact check that ``h > 1`` and ``r >= h*g`` or ``g >= h*r``."""
    if h is None or not h.compare(h.group.one) > 0:
        return False
    if compare_monomial(h * g, r) <= 0:
        return True
    # g >= h*r  <=>  g/h >= r
    return compare_monomial(g / h, r) >= 0


def non_tame_witness(G: MonomialGroup, field: FieldCtx = QQ) -> Series | None:
    """A positive constant with no nearest element in ``G`` (None for XQ)."""
    if G.base is None:
        return None
    n = 2
    while rational_log(G.base, mpq(n)) is not None:
        n += 1
    return series_ring(field).const(n)


def residue(a: Series) -> Scalar:
    """Coefficient at exponent 0 of an element of the valuation ring."""
    a = as_series(a)
    if not a:
        return a.ctx.field.zero
    if valuation(a) > 0:
        raise NotInValuationRing(f"{a} has positive leading exponent")
    return a.coeff(ZERO)


def in_vg(G: MonomialGroup, a: Series) -> bool:
    """``a = 0`` or ``st(|a|) <= 1``."""
    if not a:
        return True
    res = st_positive(G, abs(a))
    if not res.defined:
        raise NonPositive("standard part undefined")
    return res.element.compare(G.one) <= 0


def in_vv(a: Series) -> bool:
    """``a = 0`` or the reversed value of ``a`` is at least 0."""
    return not a or valuation(a) <= 0


# the induced valuation report ------------------------------------------------------------


_HYP = {
    "st_two_le_one": ["G contains 1"],
    "st_is_leading_monomial": ["G = XQ", "r > 0"],
    "ultrametric": ["a, b nonzero", "a != -b", "st defined on |a|, |b|, |a+b|"],
    "st_multiplicative": ["r, s > 0", "st defined on r, s, rs"],
    "st_order_preserving": ["0 < a <= b", "st defined on a, b"],
    "value_group_agreement": ["a nonzero", "G = XQ"],
    "kernel_identity": ["r > 0", "st defined on r"],
    "sign_compatibility": ["r > 0", "st defined on r"],
    "valuation_ring_membership": ["st defined on |a|"],
    "residue_homomorphism": ["a, b in V_G"],
}


def induced_valuation_check(G: MonomialGroup, field: FieldCtx = QQ, seed: int = 0,
                            cases: int = 1000) -> Report:
    """Sampled exact checks of the valuation ``v_G(a) = st(|a|)`` induced by ``G``."""
    rep = Report("induced_valuation")
    rep.header = {"group": str(G), "field": str(field), "seed": seed, "cases": cases,
                  "caveat": DESK_SCALE_CAVEAT}
    ring = series_ring(field)
    witness = non_tame_witness(G, field)
    if witness is not None:
        rep.add(failed("tame", "G has no nearest element for this positive constant", witness))
        for n in _HYP:
            rep.add(skipped(n, "standard parts are not total on the positive cone",
                            hypotheses=_HYP[n]))
        return rep
    rep.add(passed("tame", "every positive series has the nearest element x^v"))

    def st(r):
        return st_positive(G, r).element

    two = ring.const(2)
    rep.add(passed("st_two_le_one", f"st(2) = {st(two)}", hypotheses=_HYP["st_two_le_one"])
            if st(two).compare(G.one) <= 0
            else failed("st_two_le_one", "st(2) > 1", st(two), hypotheses=_HYP["st_two_le_one"]))

    tallies = {n: [0, 0, None] for n in _HYP if n != "st_two_le_one"}

    def rec(n, ok, w):
        t = tallies[n]
        t[0] += 1
        if not ok:
            t[1] += 1
            if t[2] is None:
                t[2] = w

    for i in range(cases):
        gen = Generator(SplitMix64(seed, i, "induced-valuation"), 4)
        a, b = gen.series(field), gen.series(field)
        pa, pb = abs(a), abs(b)
        rec("st_is_leading_monomial", st(pa) == G.x(valuation(pa)), pa)
        if a != -b:
            s = abs(a + b)
            m = max(st(pa), st(pb))
            rec("ultrametric", st(s).compare(m) <= 0, f"{a} ; {b}")
        rec("st_multiplicative", st(pa * pb) == st(pa) * st(pb), f"{pa} ; {pb}")
        lo, hi = (pa, pb) if pa <= pb else (pb, pa)
        rec("st_order_preserving", st(lo).compare(st(hi)) <= 0, f"{lo} ; {hi}")
        rec("value_group_agreement", st(abs(a)) == G.x(valuation(a)), a)
        rec("kernel_identity", (valuation(pa) == 0) == (st(pa) == G.one), pa)
        rec("sign_compatibility", (rev_value(pa) >= RevValue(ZERO)) == (st(pa).compare(G.one) <= 0), pa)
        rec("valuation_ring_membership", in_vv(a) == in_vg(G, a), a)
        u, w = gen.series(field, max_exp=0), gen.series(field, max_exp=0)
        ok = (residue(u + w) == residue(u) + residue(w) and residue(u * w) == residue(u) * residue(w)
              and residue(ring.one) == field.one)
        rec("residue_homomorphism", ok, f"{u} ; {w}")
    for n, (count, bad, w) in tallies.items():
        rep.add(passed(n, samples=count, hypotheses=_HYP[n]) if not bad
                else failed(n, "counterexample", w, samples=count, counterexamples=bad,
                            hypotheses=_HYP[n]))
    return rep
