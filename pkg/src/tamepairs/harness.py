"""Deterministic generation and greedy shrinking of test inputs.

Every value is addressed by ``(seed, index, kind)``: the same triple always
produces the same value, independent of call order, process or platform
(see :mod:`tamepairs.rng`).  ``size`` bounds numerators, denominators,
generator counts and support sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import BudgetExhausted, NotOrderPreserving
from .ogroup import GroupElement, HahnCtx, HahnElt, LexCtx, LexVec
from .rng import SplitMix64
from .scalars import QQ, ZERO, FieldCtx, Scalar
from .structure import (
    Compose,
    HahnTruncate,
    Morphism,
    Projection,
    Shear,
    Subgroup,
    is_order_preserving,
    section_subgroup,
)

RETRY_BOUND = 10_000


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    size: int = 4

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be positive")

    def rng(self, index: int, salt) -> SplitMix64:
        return SplitMix64(self.seed, index, salt)


class Generator:
    """Draws values from a SplitMix64 stream under a size budget."""

    def __init__(self, rng: SplitMix64, size: int = 4):
        self.rng = rng
        self.size = size

    # scalars ----------------------------------------------------------------

    @property
    def bound(self) -> int:
        return 3 * self.size + 1

    def rational(self, nonzero: bool = False) -> mpq:
        r = self.rng
        while True:
            q = mpq(r.randint(-self.bound, self.bound), r.randint(1, self.bound))
            if q or not nonzero:
                return q

    def exponent(self) -> mpq:
        r = self.rng
        return mpq(r.randint(-2 * self.size, 2 * self.size), r.choice((1, 1, 2, 3)))

    def scalar(self, field: FieldCtx = QQ, nonzero: bool = False) -> Scalar:
        while True:
            a = self.rational() if self.rng.chance(3, 4) else ZERO
            b = self.rational() if field.d is not None and self.rng.chance(1, 2) else ZERO
            s = Scalar(a, b, field)
            if s or not nonzero:
                return s

    def positive_scalar(self, field: FieldCtx = QQ) -> Scalar:
        return abs(self.scalar(field, nonzero=True))

    # group elements -----------------------------------------------------------

    def element(self, ctx, lead=None, exponents=None) -> GroupElement:
        """Random element; ``lead`` fixes the Lex start level / Hahn top exponent."""
        if isinstance(ctx, LexCtx):
            start = lead if lead is not None else self.rng.randint(1, ctx.n)
            coords = [ctx.field.zero] * ctx.n
            for level in range(start, ctx.n + 1):
                if level == start:
                    coords[level - 1] = self.scalar(ctx.field, nonzero=True)
                elif self.rng.chance(3, 4):
                    coords[level - 1] = self.scalar(ctx.field)
            return ctx.element(coords)
        terms = {}
        count = self.rng.randint(1, self.size)
        for _ in range(count):
            if exponents and self.rng.chance(2, 3):
                e = self.rng.choice(exponents)
            else:
                e = self.exponent()
            if lead is not None and e > lead:
                continue
            terms[e] = self.scalar(ctx.field, nonzero=True)
        if lead is not None:
            terms[mpq(lead)] = self.scalar(ctx.field, nonzero=True)
        return ctx.element(terms)

    def subgroup(self, ctx, ring: str = "Q", max_gens: int | None = None) -> Subgroup:
        cap = max_gens or self.size
        if isinstance(ctx, LexCtx):
            cap = min(cap, ctx.dim)
        count = self.rng.randint(1, cap)
        pool = [self.exponent() for _ in range(self.size)] if isinstance(ctx, HahnCtx) else None
        gens = [self.element(ctx, exponents=pool) for _ in range(count)]
        return Subgroup(ctx, gens, ring)

    # morphisms ----------------------------------------------------------------

    def _candidate_shear(self, ctx: LexCtx) -> list:
        """A block lower-triangular matrix; occasionally perturbed above the diagonal."""
        k, n = ctx.k, ctx.n
        m = [[ZERO] * ctx.dim for _ in range(ctx.dim)]
        for i in range(n):
            c = self.positive_scalar(ctx.field)
            if k == 1:
                m[i][i] = c.a
            else:
                d = ctx.field.d
                m[2 * i][2 * i], m[2 * i][2 * i + 1] = c.a, c.b * d
                m[2 * i + 1][2 * i], m[2 * i + 1][2 * i + 1] = c.b, c.a
        for r in range(ctx.dim):
            for col in range(ctx.dim):
                if r // k > col // k and self.rng.chance(1, 2):
                    m[r][col] = self.rational()
                elif r // k < col // k and self.rng.chance(1, 8):
                    m[r][col] = self.rational()
        return m

    def shear(self, ctx: LexCtx) -> Shear:
        for _ in range(RETRY_BOUND):
            m = self._candidate_shear(ctx)
            if not is_order_preserving(m, ctx, samples=0):
                continue
            try:
                return Shear(ctx, m)
            except NotOrderPreserving:
                continue
        raise BudgetExhausted(f"no order-preserving shear on {ctx} after {RETRY_BOUND} tries")

    def morphism(self, ctx) -> Morphism:
        if isinstance(ctx, HahnCtx):
            return HahnTruncate(ctx, self.exponent())
        if ctx.n < 2:
            return self.shear(ctx)
        keep = self.rng.randint(1, ctx.n - 1)
        proj = Projection(ctx, keep)
        variant = self.rng.below(4)
        if variant == 0:
            return proj
        parts = [proj]
        if variant in (1, 3):
            parts.insert(0, self.shear(ctx))
        if variant in (2, 3):
            parts.append(self.shear(proj.codomain))
        return Compose(parts)

    def graph_section(self, ctx: LexCtx, keep: int | None = None, shears: bool = True):
        """``(f, T, S)`` where ``S`` is the graph subgroup of a random section of ``f``."""
        keep = keep if keep is not None else self.rng.randint(1, ctx.n - 1)
        proj = Projection(ctx, keep)
        parts = [proj]
        if shears:
            variant = self.rng.below(4)
            if variant in (1, 3):
                parts.insert(0, self.shear(ctx))
            if variant in (2, 3):
                parts.append(self.shear(proj.codomain))
        f = parts[0] if len(parts) == 1 else Compose(parts)
        tdim = proj.codomain.dim
        kdim = ctx.dim - tdim
        T = [[self.rational() if self.rng.chance(2, 3) else ZERO for _ in range(tdim)] for _ in range(kdim)]
        return f, T, section_subgroup(f, T)

    # series -------------------------------------------------------------------

    def series(self, field: FieldCtx = QQ, positive: bool = False, max_exp=None):
        from .hahnfield import Series, series_ring

        ring = series_ring(field)
        terms = {}
        for _ in range(self.rng.randint(1, self.size)):
            e = self.exponent()
            if max_exp is not None and e > max_exp:
                e = mpq(max_exp) - abs(e)
            terms[e] = self.scalar(field, nonzero=True)
        s = ring.element(terms)
        if positive and s.sign() < 0:
            s = -s
        assert isinstance(s, Series)
        return s


KINDS = ("scalar", "element", "subgroup", "morphism", "series", "graph-section")


def generate(kind: str, cfg: GenConfig, index: int, ctx=None, **options):
    """The value of ``kind`` at ``index`` of the stream fixed by ``cfg``.

    ``ctx`` is a field (scalar, series) or an ambient group context (the
    other kinds).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    gen = Generator(cfg.rng(index, kind), cfg.size)
    if kind == "scalar":
        return gen.scalar(ctx or QQ, **options)
    if kind == "series":
        return gen.series(ctx or QQ, **options)
    if ctx is None:
        ctx = LexCtx(2)
    if kind == "element":
        return gen.element(ctx, **options)
    if kind == "subgroup":
        return gen.subgroup(ctx, **options)
    if kind == "morphism":
        return gen.morphism(ctx, **options)
    return gen.graph_section(ctx, **options)


# shrinking ----------------------------------------------------------------------------


def _rational_candidates(q) -> list:
    q = mpq(q)
    if not q:
        return []
    out = [ZERO, mpq(1) if q > 0 else mpq(-1)]
    t = mpq(int(q))
    out.append(t)
    if q.denominator != 1:
        out.append(mpq(q.numerator, q.denominator // 2 or 1))
    if abs(q.numerator) > 1:
        out.append(mpq(q.numerator // 2, q.denominator))
    if q < 0:
        out.append(-q)
    # steps toward zero: n - n/2, n - n/4, ..., n - 1 (bisects to a boundary)
    n = abs(int(q))
    step = n // 2
    while step >= 1:
        out.append(t - step if q > 0 else t + step)
        step //= 2
    seen, res = set(), []
    for c in out:
        if c != q and c not in seen and (abs(c.numerator) + c.denominator) <= (abs(q.numerator) + q.denominator):
            seen.add(c)
            res.append(c)
    return res


def _scalar_candidates(s: Scalar) -> list:
    out = []
    if s.b:
        out.append(Scalar(s.a, ZERO, s.field))
        out.extend(Scalar(s.a, b, s.field) for b in _rational_candidates(s.b))
    out.extend(Scalar(a, s.b, s.field) for a in _rational_candidates(s.a))
    return out


def _element_candidates(g: GroupElement) -> list:
    if isinstance(g, LexVec):
        out = []
        flat = list(g.flat)
        for i, x in enumerate(flat):
            for c in _rational_candidates(x):
                f2 = flat.copy()
                f2[i] = c
                out.append(LexVec(g.ctx, tuple(f2)))
        return out
    out = []
    terms = list(g.terms)
    for i in range(len(terms)):
        out.append(g._make(tuple(terms[:i] + terms[i + 1 :])))
    for i, (e, c) in enumerate(terms):
        for c2 in _scalar_candidates(c):
            if c2:
                t2 = terms.copy()
                t2[i] = (e, c2)
                out.append(g._make(tuple(t2)))
        for e2 in _rational_candidates(e) + ([ZERO] if e else []):
            if all(e2 != x for x, _ in terms):
                acc = dict(terms)
                acc[e2] = acc.pop(e)
                out.append(g._make(tuple(sorted(acc.items(), reverse=True))))
    return out


def _subgroup_candidates(S: Subgroup) -> list:
    gens = list(S.generators)
    out = []
    for i in range(len(gens)):
        out.append(Subgroup(S.ambient, gens[:i] + gens[i + 1 :], S.ring))
    for i, g in enumerate(gens):
        for g2 in _element_candidates(g):
            out.append(Subgroup(S.ambient, gens[:i] + [g2] + gens[i + 1 :], S.ring))
    return out


def _candidates(value) -> list:
    if isinstance(value, Subgroup):
        return _subgroup_candidates(value)
    if isinstance(value, (LexVec, HahnElt)):
        return _element_candidates(value)
    if isinstance(value, Scalar):
        return _scalar_candidates(value)
    if isinstance(value, type(mpq())):
        return _rational_candidates(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return [int(c) for c in _rational_candidates(value) if c.denominator == 1]
    if isinstance(value, tuple):
        out = []
        for i, v in enumerate(value):
            out.extend(value[:i] + (c,) + value[i + 1 :] for c in _candidates(v))
        return out
    return []


def shrink(value, fails, max_steps: int = 10_000):
    """Greedily simplify ``value`` while ``fails(value)`` stays true.

    Candidates are tried in a fixed order (drop generators or terms first,
    then zero and simplify coordinates), so the result is deterministic and
    locally minimal: no single candidate step keeps the failure.
    """
    if not fails(value):
        raise ValueError("shrink needs a value on which the predicate fails")
    for _ in range(max_steps):
        for cand in _candidates(value):
            try:
                still = fails(cand)
            except Exception:
                still = False
            if still:
                value = cand
                break
        else:
            return value
    return value
