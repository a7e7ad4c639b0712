"""Concrete divisible ordered abelian groups.

Two ambient families are provided:

* ``LexCtx(n, F)`` -- the group ``F^n`` ordered lexicographically, index 1
  most significant;
* ``HahnCtx(F)`` -- finite-support maps ``Q -> F`` ordered by the sign of
  the coefficient at the largest exponent.

``LexVec`` stores its coordinates flattened into rationals (``a`` then ``b``
for each ``a + b*sqrt(d)``), which is also the coordinate layout used by the
linear algebra in :mod:`tamepairs.structure`.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import ContextMismatch, DimensionMismatch, ParseError, ZeroElement
from .scalars import (
    QQ,
    ZERO,
    FieldCtx,
    Ordering,
    Rational,
    Scalar,
    coerce_scalar,
    quad_sign,
    rat,
)
from .syntax import format_exponent, parse_value, split_vector

CHECK_INVARIANTS = __debug__


class GroupCtx:
    """Marker base for ambient group contexts."""

    field: FieldCtx

    @property
    def k(self) -> int:
        """Rational coordinates per level (1 over Q, 2 over Q(sqrt d))."""
        return self.field.degree


@dataclass(frozen=True)
class LexCtx(GroupCtx):
    n: int
    field: FieldCtx = QQ

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("Lex dimension must be a positive integer")

    kind = "lex"

    @property
    def dim(self) -> int:
        return self.n * self.field.degree

    def zero(self) -> "LexVec":
        return LexVec(self, (ZERO,) * self.dim)

    def element(self, coords) -> "LexVec":
        coords = list(coords)
        if len(coords) != self.n:
            raise DimensionMismatch(f"expected {self.n} coordinates, got {len(coords)}")
        flat = []
        for c in coords:
            s = coerce_scalar(c, self.field)
            flat.append(s.a)
            if self.field.d is not None:
                flat.append(s.b)
        return LexVec(self, tuple(flat))

    def from_flat(self, flat) -> "LexVec":
        flat = tuple(rat(x) for x in flat)
        if len(flat) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} rational coordinates")
        return LexVec(self, flat)

    def unit(self, index: int) -> "LexVec":
        """Unit vector of the flattened coordinate ``index`` (0-based)."""
        flat = [ZERO] * self.dim
        flat[index] = mpq(1)
        return LexVec(self, tuple(flat))

    def parse(self, text: str) -> "LexVec":
        return parse_element(text, self)

    def __str__(self):
        return f"Lex({self.n}, {self.field})"


@dataclass(frozen=True)
class HahnCtx(GroupCtx):
    field: FieldCtx = QQ

    kind = "hahn"

    def zero(self) -> "HahnElt":
        return HahnElt(self, ())

    def monomial(self, exponent, coeff=1) -> "HahnElt":
        c = coerce_scalar(coeff, self.field)
        return HahnElt(self, ((rat(exponent), c),) if c else ())

    def element(self, terms) -> "HahnElt":
        """Build from ``(exponent, coeff)`` pairs or an ``{exponent: coeff}`` dict."""
        if isinstance(terms, dict):
            terms = terms.items()
        acc: dict = {}
        for e, c in terms:
            e = rat(e)
            c = coerce_scalar(c, self.field)
            acc[e] = acc[e] + c if e in acc else c
        return HahnElt(self, _canonical_terms(acc))

    def parse(self, text: str) -> "HahnElt":
        return parse_element(text, self)

    def __str__(self):
        return f"Hahn({self.field})"


def _canonical_terms(acc: dict) -> tuple:
    return tuple((e, acc[e]) for e in sorted(acc, reverse=True) if acc[e])


def _check_ctx(a, b):
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")


class GroupElement:
    """Common arithmetic and order protocol for ambient group elements."""

    __slots__ = ("ctx",)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        return self.scale(q)

    def __rmul__(self, q):
        return self.scale(q)

    def __truediv__(self, n):
        return self.scale(1 / rat(n))

    def cmp(self, other) -> Ordering:
        return Ordering.of(self.compare(other))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"{type(self).__name__}('{self}', {self.ctx})"


class LexVec(GroupElement):
    __slots__ = ("flat",)

    def __init__(self, ctx: LexCtx, flat: tuple):
        self.ctx = ctx
        self.flat = flat

    @property
    def coords(self) -> tuple:
        f = self.ctx.field
        if f.d is None:
            return tuple(Scalar(x, 0, f) for x in self.flat)
        fl = self.flat
        return tuple(Scalar(fl[i], fl[i + 1], f) for i in range(0, len(fl), 2))

    def __add__(self, other):
        if not isinstance(other, LexVec):
            return NotImplemented
        _check_ctx(self, other)
        return LexVec(self.ctx, tuple(x + y for x, y in zip(self.flat, other.flat)))

    def __neg__(self):
        return LexVec(self.ctx, tuple(-x for x in self.flat))

    def __sub__(self, other):
        if not isinstance(other, LexVec):
            return NotImplemented
        _check_ctx(self, other)
        return LexVec(self.ctx, tuple(x - y for x, y in zip(self.flat, other.flat)))

    def scale(self, q) -> "LexVec":
        q = rat(q)
        return LexVec(self.ctx, tuple(q * x for x in self.flat))

    def smul(self, s) -> "LexVec":
        """Multiply every coordinate by a field scalar."""
        s = coerce_scalar(s, self.ctx.field)
        return self.ctx.element([s * c for c in self.coords])

    def sign(self) -> int:
        fl = self.flat
        if self.ctx.field.d is None:
            for x in fl:
                if x:
                    return 1 if x > 0 else -1
            return 0
        d = self.ctx.field.d
        for i in range(0, len(fl), 2):
            a, b = fl[i], fl[i + 1]
            if a or b:
                return quad_sign(a, b, d)
        return 0

    def compare(self, other) -> int:
        _check_ctx(self, other)
        if self.ctx.field.d is None:
            return (self.flat > other.flat) - (self.flat < other.flat)
        d = self.ctx.field.d
        x, y = self.flat, other.flat
        for i in range(0, len(x), 2):
            a, b = x[i] - y[i], x[i + 1] - y[i + 1]
            if a or b:
                return quad_sign(a, b, d)
        return 0

    def __eq__(self, other):
        if not isinstance(other, LexVec):
            return NotImplemented
        return self.ctx == other.ctx and self.flat == other.flat

    def __hash__(self):
        return hash(("lex", self.flat))

    def __bool__(self):
        return any(self.flat)

    def lead(self) -> int:
        k = self.ctx.k
        for i, x in enumerate(self.flat):
            if x:
                return i // k + 1
        raise ZeroElement("lead of the zero element")

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class HahnElt(GroupElement):
    __slots__ = ("terms",)

    def __init__(self, ctx: HahnCtx, terms: tuple):
        self.ctx = ctx
        self.terms = terms
        if CHECK_INVARIANTS:
            _assert_canonical(terms, ctx.field)

    def _make(self, terms) -> "HahnElt":
        return type(self)(self.ctx, terms)

    def __add__(self, other):
        if not isinstance(other, HahnElt):
            return NotImplemented
        _check_ctx(self, other)
        return self._make(_merge(self.terms, other.terms, 1))

    def __sub__(self, other):
        if not isinstance(other, HahnElt):
            return NotImplemented
        _check_ctx(self, other)
        return self._make(_merge(self.terms, other.terms, -1))

    def __neg__(self):
        return self._make(tuple((e, -c) for e, c in self.terms))

    def scale(self, q) -> "HahnElt":
        q = rat(q)
        if not q:
            return self._make(())
        return self._make(tuple((e, c * q) for e, c in self.terms))

    def smul(self, s) -> "HahnElt":
        s = coerce_scalar(s, self.ctx.field)
        if not s:
            return self._make(())
        return self._make(tuple((e, c * s) for e, c in self.terms))

    def sign(self) -> int:
        return self.terms[0][1].sign() if self.terms else 0

    def compare(self, other) -> int:
        _check_ctx(self, other)
        diff = _merge(self.terms, other.terms, -1)
        return diff[0][1].sign() if diff else 0

    def __eq__(self, other):
        if not isinstance(other, HahnElt):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(("hahn", self.terms))

    def __bool__(self):
        return bool(self.terms)

    def lead(self) -> Rational:
        if not self.terms:
            raise ZeroElement("lead of the zero element")
        return self.terms[0][0]

    @property
    def support(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    def coeff(self, e) -> Scalar:
        e = rat(e)
        for ex, c in self.terms:
            if ex == e:
                return c
        return self.ctx.field.zero

    def truncate_below(self, cut) -> "HahnElt":
        """Sub-sum over exponents ``>= cut``."""
        cut = rat(cut)
        return self._make(tuple(t for t in self.terms if t[0] >= cut))

    def __str__(self):
        return format_terms(self.terms)


def _merge(s, t, sign):
    acc = dict(s)
    for e, c in t:
        if e in acc:
            acc[e] = acc[e] + c if sign > 0 else acc[e] - c
        else:
            acc[e] = c if sign > 0 else -c
    return _canonical_terms(acc)


def _assert_canonical(terms, field):
    prev = None
    for e, c in terms:
        if not isinstance(c, Scalar) or c.field != field or not c:
            raise AssertionError(f"non-canonical Hahn coefficient {c!r}")
        if prev is not None and not e < prev:
            raise AssertionError("Hahn exponents must be strictly descending")
        prev = e


def format_terms(terms) -> str:
    if not terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(terms):
        mono = f"x^{format_exponent(e)}"
        if c.is_rational:
            mag = abs(c.a)
            if i == 0:
                out.append(f"{'-' if c.a < 0 else ''}{mag}*{mono}")
            else:
                out.append(f"{'-' if c.a < 0 else '+'} {mag}*{mono}")
        else:
            out.append(("" if i == 0 else "+ ") + f"({c})*{mono}")
    return " ".join(out)


# level bookkeeping ----------------------------------------------------------------


def lead(a: GroupElement):
    """Archimedean level of ``a``: Lex index (1-based) or Hahn leading exponent."""
    return a.lead()


def significance_key(ctx: GroupCtx, level):
    """Sort key on levels; smaller keys are more significant."""
    return level if isinstance(ctx, LexCtx) else -level


def more_significant(ctx: GroupCtx, l1, l2) -> bool:
    return significance_key(ctx, l1) < significance_key(ctx, l2)


# functional forms ---------------------------------------------------------------------


def g_arith(op: str, a: GroupElement, b: GroupElement | None = None, q=None) -> GroupElement:
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "sub":
        return a - b
    if op == "scale":
        return a.scale(q)
    raise ValueError(f"unknown group operation {op!r}")


def g_cmp(a: GroupElement, b: GroupElement) -> Ordering:
    return a.cmp(b)


def parse_element(text: str, ctx: GroupCtx) -> GroupElement:
    """Parse ``(s1, ..., sn)`` for Lex contexts or ``c1*x^e1 + ...`` for Hahn."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    f = ctx.field
    if isinstance(ctx, LexCtx):
        parts = split_vector(text)
        if parts is None:
            if ctx.n != 1:
                raise ParseError("expected a parenthesised coordinate tuple", text, 0)
            parts = [(text, 0)]
        if len(parts) != ctx.n:
            raise DimensionMismatch(f"expected {ctx.n} coordinates in {text!r}, got {len(parts)}")
        coords = []
        for piece, offset in parts:
            try:
                val = parse_value(piece, f.d)
            except ParseError as exc:
                raise ParseError(str(exc).split(" (column")[0], text, offset + exc.pos) from None
            if any(e != 0 for e in val):
                raise ParseError("indeterminate x inside a Lex coordinate", text, offset)
            a, b = val.get(mpq(0), (mpq(0), mpq(0)))
            coords.append(Scalar(a, b, f))
        return ctx.element(coords)
    val = parse_value(text, f.d)
    return HahnElt(ctx, _canonical_terms({e: Scalar(a, b, f) for e, (a, b) in val.items()}))
