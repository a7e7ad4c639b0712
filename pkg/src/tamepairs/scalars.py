"""Exact scalars over Q and a real quadratic field Q(sqrt d).

Rationals are ``gmpy2.mpq`` values.  A :class:`Scalar` is ``a + b*sqrt(d)``
with rational parts and an attached :class:`FieldCtx`; rational scalars are
simply those with ``b == 0``.  Ordering is decided exactly: when ``a`` and
``b`` disagree in sign the sign of the sum is read off ``a*a - b*b*d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from .errors import DivisionByZero, FieldMismatch, ParseError
from .syntax import parse_scalar_parts

Rational = type(mpq())
_MPZ = type(gmpy2.mpz())
ZERO = mpq(0)
ONE = mpq(1)


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, sign: int) -> "Ordering":
        return cls((sign > 0) - (sign < 0))


def rat(x) -> Rational:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, (int, _MPZ, Fraction)) and not isinstance(x, bool):
        return mpq(x)
    if isinstance(x, str):
        a, b = parse_scalar_parts(x, None)
        return a
    if isinstance(x, Scalar) and x.b == 0:
        return x.a
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _is_squarefree(d: int) -> bool:
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class FieldCtx:
    """Coefficient field: ``Q`` when ``d`` is None, otherwise ``Q(sqrt d)``."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None:
            if not isinstance(self.d, int) or self.d < 2 or not _is_squarefree(self.d):
                raise ValueError(f"d must be a squarefree integer > 1, got {self.d!r}")

    @property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    @property
    def is_rational(self) -> bool:
        return self.d is None

    def __str__(self):
        return "Q" if self.d is None else f"Q(sqrt({self.d}))"

    def scalar(self, a=0, b=0) -> "Scalar":
        return Scalar(a, b, self)

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(text, self)

    @property
    def zero(self) -> "Scalar":
        return Scalar(ZERO, ZERO, self)

    @property
    def one(self) -> "Scalar":
        return Scalar(ONE, ZERO, self)


QQ = FieldCtx()


def quadratic_field(d: int) -> FieldCtx:
    return FieldCtx(d)


def quad_sign(a, b, d) -> int:
    """Sign of ``a + b*sqrt(d)`` for rationals a, b and non-square d > 0."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    return sa if a * a > b * b * d else sb


class Scalar:
    """Immutable element ``a + b*sqrt(d)`` of a field context."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a=0, b=0, field: FieldCtx = QQ):
        a = rat(a)
        b = rat(b)
        if b and field.d is None:
            raise FieldMismatch("irrational part in the field Q")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # coercion -------------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Rational, _MPZ, Fraction)) and not isinstance(other, bool):
            return Scalar(other, ZERO, self.field)
        return NotImplemented

    def _new(self, a, b) -> "Scalar":
        s = object.__new__(Scalar)
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "field", self.field)
        return s

    # field operations -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return self._new(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.b and not o.b:
            return self._new(self.a * o.a, ZERO)
        d = self.field.d
        return self._new(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self.a and not self.b:
            raise DivisionByZero("inverse of zero")
        if not self.b:
            return self._new(1 / self.a, ZERO)
        n = self.norm()
        return self._new(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def conj(self) -> "Scalar":
        return self._new(self.a, -self.b)

    def norm(self) -> Rational:
        if self.field.d is None:
            return self.a * self.a
        return self.a * self.a - self.b * self.b * self.field.d

    # order ------------------------------------------------------------------

    def sign(self) -> int:
        if not self.b:
            return (self.a > 0) - (self.a < 0)
        return quad_sign(self.a, self.b, self.field.d)

    def cmp(self, other) -> Ordering:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        if not self.b and not o.b:
            return Ordering.of((self.a > o.a) - (self.a < o.a))
        return Ordering.of(quad_sign(self.a - o.a, self.b - o.b, self.field.d))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational, _MPZ, Fraction)) and not isinstance(other, bool):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b, self.field.d))

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def is_rational(self) -> bool:
        return not self.b

    def floor(self) -> int:
        return floor_scalar(self)

    # text -------------------------------------------------------------------

    def __str__(self):
        if not self.b:
            return str(self.a)
        rad = f"*sqrt({self.field.d})"
        if not self.a:
            return f"{self.b}{rad}"
        if self.b < 0:
            return f"{self.a}-{-self.b}{rad}"
        return f"{self.a}+{self.b}{rad}"

    def __repr__(self):
        return f"Scalar('{self}', {self.field})"


def parse_scalar(text: str, field: FieldCtx = QQ) -> Scalar:
    """Parse ``p/q`` or ``p/q+r/s*sqrt(d)`` (and sums/products thereof)."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    a, b = parse_scalar_parts(text, field.d)
    return Scalar(a, b, field)


def coerce_scalar(x, field: FieldCtx) -> Scalar:
    if isinstance(x, Scalar):
        if x.field != field:
            raise FieldMismatch(f"{x.field} vs {field}")
        return x
    if isinstance(x, str):
        return parse_scalar(x, field)
    return Scalar(rat(x), ZERO, field)


# functional forms ---------------------------------------------------------------------


def scalar_arith(op: str, x: Scalar, y: Scalar | None = None) -> Scalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown scalar operation {op!r}")


def scalar_cmp(x: Scalar, y: Scalar) -> Ordering:
    if isinstance(x, Scalar):
        return x.cmp(y)
    return coerce_scalar(x, y.field).cmp(y)


# rounding and rational approximation ------------------------------------------


def floor_scalar(x) -> int:
    """Exact floor of a rational or quadratic scalar."""
    if not isinstance(x, Scalar):
        return math.floor(rat(x))
    if not x.b:
        return math.floor(x.a)
    d = x.field.d
    t = x.b * x.b * d
    p, q = int(t.numerator), int(t.denominator)
    s = math.isqrt(p * q)  # s/q <= |b|*sqrt(d) < (s+1)/q
    approx = x.a + (mpq(s, q) if x.b > 0 else -mpq(s + 1, q))
    n = math.floor(approx)
    while x.cmp(n) < 0:
        n -= 1
    while x.cmp(n + 1) >= 0:
        n += 1
    return n


def rational_below(x) -> Rational:
    """A rational strictly between 0 and the positive scalar ``x``."""
    if isinstance(x, Scalar) and x.b:
        if x.sign() <= 0:
            raise ValueError("rational_below needs a positive argument")
        k = 0
        while True:
            n = floor_scalar(x * (1 << k))
            if n >= 1:
                return mpq(n, 1 << k)
            k += 1
    q = rat(x)
    if q <= 0:
        raise ValueError("rational_below needs a positive argument")
    return q / 2


def rational_approx(x, bits: int) -> Rational:
    """``floor(x * 2**bits) / 2**bits``."""
    if isinstance(x, Scalar):
        return mpq(floor_scalar(x * (1 << bits)), 1 << bits)
    return mpq(math.floor(rat(x) * (1 << bits)), 1 << bits)


def rational_between(lo, hi) -> Rational:
    """A dyadic rational strictly between scalars ``lo < hi``."""
    if _cmp_any(lo, hi) >= 0:
        raise ValueError("rational_between needs lo < hi")
    bits = 0
    while True:
        q = mpq(floor_scalar(lo * (1 << bits)) + 1, 1 << bits)
        if _cmp_any(lo, q) < 0 and _cmp_any(q, hi) < 0:
            return q
        bits += 1


def _cmp_any(x, y) -> int:
    if isinstance(x, Scalar):
        return x.cmp(y)
    if isinstance(y, Scalar):
        return -y.cmp(x)
    x, y = rat(x), rat(y)
    return (x > y) - (x < y)
