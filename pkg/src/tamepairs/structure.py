"""Finitely generated subgroups and structured o-group morphisms.

All linear algebra happens over Q in *rational coordinates*: a Lex element
contributes its flattened coordinates, a Hahn element one rational per
``(exponent, part)`` pair of its support.  Columns are always ordered from
most to least significant, so a reduced echelon basis exposes the archimedean
levels of a subgroup through its pivot columns.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from . import linalg
from .errors import (
    ContextMismatch,
    DimensionMismatch,
    InconsistentVerdict,
    NotOrderPreserving,
    UnsupportedMorphism,
    WindowError,
)
from .ogroup import GroupCtx, GroupElement, HahnCtx, HahnElt, LexCtx, LexVec, significance_key
from .rng import SplitMix64
from .scalars import ZERO, Scalar, rat, rational_approx

# rational coordinates ---------------------------------------------------------------


def qcoords(g: GroupElement) -> dict:
    """Sparse rational coordinates ``{key: value}`` of an element.

    Keys are flat indices for Lex elements and ``(exponent, part)`` pairs for
    Hahn elements (part 0 is the rational part, part 1 the sqrt(d) part).
    """
    if isinstance(g, LexVec):
        return {i: x for i, x in enumerate(g.flat) if x}
    out = {}
    for e, c in g.terms:
        if c.a:
            out[(e, 0)] = c.a
        if c.b:
            out[(e, 1)] = c.b
    return out


def key_level(ctx: GroupCtx, key):
    if isinstance(ctx, LexCtx):
        return key // ctx.k + 1
    return key[0]


def column_sort_key(ctx: GroupCtx, key):
    if isinstance(ctx, LexCtx):
        return key
    return (-key[0], key[1])


def window_columns(ctx: GroupCtx, elements=(), exponents=()) -> tuple:
    """Coordinate columns spanned by ``elements`` in significance order.

    Lex contexts always use every flattened coordinate; Hahn contexts use
    all parts of every exponent in the union of supports.
    """
    if isinstance(ctx, LexCtx):
        return tuple(range(ctx.dim))
    exps = set(rat(e) for e in exponents)
    for g in elements:
        exps.update(g.support)
    return tuple((e, p) for e in sorted(exps, reverse=True) for p in range(ctx.k))


def to_vector(g: GroupElement, columns) -> list | None:
    """Dense coordinates over ``columns``; None if ``g`` has support outside."""
    if isinstance(g, LexVec):
        return list(g.flat)
    q = qcoords(g)
    vec = []
    for c in columns:
        vec.append(q.pop(c, ZERO))
    return None if q else vec


def from_vector(ctx: GroupCtx, columns, vec) -> GroupElement:
    if isinstance(ctx, LexCtx):
        return LexVec(ctx, tuple(mpq(x) for x in vec))
    acc: dict = {}
    for (e, part), x in zip(columns, vec):
        if x:
            a, b = acc.get(e, (ZERO, ZERO))
            acc[e] = (a + x, b) if part == 0 else (a, b + x)
    f = ctx.field
    terms = tuple((e, Scalar(a, b, f)) for e, (a, b) in sorted(acc.items(), reverse=True))
    return HahnElt(ctx, terms)


# subgroups ------------------------------------------------------------------------------


class Subgroup:
    """A finitely generated Q-span (or Z-span) inside an ambient group.

    The reduced echelon basis of the Q-span is computed eagerly.  For Z-spans
    a Hermite basis of the lattice is kept as well; membership and
    coordinates then require integral coefficients.
    """

    def __init__(self, ambient: GroupCtx, generators=(), ring: str = "Q", columns=None):
        if ring not in ("Q", "Z"):
            raise ValueError("ring must be 'Q' or 'Z'")
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ambient.parse(g)
            if g.ctx != ambient:
                raise ContextMismatch(f"generator {g} is not in {ambient}")
            gens.append(g)
        self.ambient = ambient
        self.generators = tuple(gens)
        self.ring = ring
        self.columns = tuple(columns) if columns is not None else window_columns(ambient, gens)
        vecs = []
        for g in gens:
            v = to_vector(g, self.columns)
            if v is None:
                raise WindowError(f"generator {g} leaves the coordinate window")
            vecs.append(v)
        rows, pivots = linalg.rref(vecs, len(self.columns)) if vecs else ([], [])
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)
        self.zbasis = tuple(tuple(r) for r in linalg.hermite_basis(vecs)) if ring == "Z" else None
        self._levels = tuple(key_level(ambient, self.columns[p]) for p in self.pivots)

    # basic facts ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return not self.rows

    @property
    def divisible(self) -> bool:
        return self.ring == "Q" or self.is_zero

    @property
    def pivot_levels(self) -> tuple:
        return self._levels

    @property
    def top_level(self):
        """Most significant level of a nonzero element, or None for S = 0."""
        return self._levels[0] if self._levels else None

    @property
    def bottom_level(self):
        """Least significant level of a nonzero element, or None for S = 0."""
        return self._levels[-1] if self._levels else None

    def basis(self) -> list:
        """Echelon basis elements (Hermite basis for Z-spans)."""
        src = self.rows if self.ring == "Q" else self.zbasis
        return [from_vector(self.ambient, self.columns, r) for r in src]

    def vector(self, g: GroupElement):
        if g.ctx != self.ambient:
            raise ContextMismatch(f"{g} is not in {self.ambient}")
        return to_vector(g, self.columns)

    def coords(self, g: GroupElement):
        v = self.vector(g)
        if v is None:
            return None
        if self.ring == "Q":
            return linalg.coords_in_rref(self.rows, self.pivots, v)
        c = linalg.solve_combination(self.zbasis, v)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return c

    def contains(self, g: GroupElement) -> bool:
        return self.coords(g) is not None

    __contains__ = contains

    def combine(self, coeffs) -> GroupElement:
        src = self.rows if self.ring == "Q" else self.zbasis
        if len(coeffs) != len(src):
            raise DimensionMismatch("coefficient count does not match the basis")
        vec = [ZERO] * len(self.columns)
        for c, r in zip(coeffs, src):
            c = rat(c)
            if c:
                for j, x in enumerate(r):
                    if x:
                        vec[j] += c * x
        return from_vector(self.ambient, self.columns, vec)

    def __eq__(self, other):
        """Equal as subsets of the same ambient (same span, same ring)."""
        if not isinstance(other, Subgroup):
            return NotImplemented
        if other.ambient != self.ambient or other.ring != self.ring or other.dim != self.dim:
            return False
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators)

    def __hash__(self):
        return hash((self.ambient, self.ring, self.dim))

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"span_{self.ring}{{{gens}}}"

    def __repr__(self):
        return f"Subgroup({self}, {self.ambient})"


def subgroup_coords(S: Subgroup, g: GroupElement):
    return S.coords(g)


# kernels ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelDesc:
    """Convex kernel given by a level threshold.

    Lex: the first ``threshold`` levels vanish and later levels are free.
    Hahn: the support lies strictly below ``threshold``.
    """

    ctx: GroupCtx
    threshold: object

    def contains(self, g: GroupElement) -> bool:
        if g.ctx != self.ctx:
            raise ContextMismatch(f"{g} is not in {self.ctx}")
        if isinstance(g, LexVec):
            return not any(g.flat[: self.threshold * self.ctx.k])
        return not g.terms or g.terms[0][0] < self.threshold

    __contains__ = contains

    def basis_vectors(self) -> list:
        if not isinstance(self.ctx, LexCtx):
            raise WindowError("Hahn kernels are infinite-dimensional")
        start = self.threshold * self.ctx.k
        return [self.ctx.unit(i).flat for i in range(start, self.ctx.dim)]

    @property
    def dim(self) -> int:
        return self.ctx.dim - self.threshold * self.ctx.k

    def __str__(self):
        if isinstance(self.ctx, LexCtx):
            return f"{{levels 1..{self.threshold} vanish}}"
        return f"{{support < {self.threshold}}}"


# morphisms -------------------------------------------------------------------------------


class Morphism:
    """A structured surjective o-group homomorphism."""

    domain: GroupCtx
    codomain: GroupCtx

    def apply(self, g: GroupElement) -> GroupElement:
        raise NotImplementedError

    def __call__(self, g):
        return self.apply(g)

    def _check(self, g):
        if g.ctx != self.domain:
            raise ContextMismatch(f"{g} is not in the domain {self.domain}")

    def kernel(self) -> KernelDesc:
        raise NotImplementedError

    def matrix(self) -> list:
        raise UnsupportedMorphism(f"{type(self).__name__} has no finite matrix")


class Projection(Morphism):
    """Keep the first ``keep`` Lex coordinates."""

    def __init__(self, domain: LexCtx, keep: int):
        if not isinstance(domain, LexCtx):
            raise UnsupportedMorphism("Projection needs a Lex domain")
        if not 1 <= keep < domain.n:
            raise DimensionMismatch(f"keep must satisfy 1 <= keep < {domain.n}")
        self.domain = domain
        self.keep = keep
        self.codomain = LexCtx(keep, domain.field)
        self._cut = keep * domain.k

    def apply(self, g):
        self._check(g)
        return LexVec(self.codomain, g.flat[: self._cut])

    def kernel(self):
        return KernelDesc(self.domain, self.keep)

    def matrix(self):
        one = mpq(1)
        return [[one if i == j else ZERO for j in range(self.domain.dim)] for i in range(self._cut)]

    def describe(self):
        return {"kind": "projection", "keep": self.keep}

    def __str__(self):
        return f"Projection(keep={self.keep})"


class HahnTruncate(Morphism):
    """Send a Hahn element to its sub-sum over exponents ``>= cut``."""

    def __init__(self, domain: HahnCtx, cut):
        if not isinstance(domain, HahnCtx):
            raise UnsupportedMorphism("HahnTruncate needs a Hahn domain")
        self.domain = domain
        self.codomain = domain
        self.cut = rat(cut)

    def apply(self, g):
        self._check(g)
        return g.truncate_below(self.cut)

    def kernel(self):
        return KernelDesc(self.domain, self.cut)

    def describe(self):
        return {"kind": "hahn_truncate", "cut": str(self.cut)}

    def __str__(self):
        return f"HahnTruncate(cut={self.cut})"


SHEAR_CHECK_SAMPLES = 64


class Shear(Morphism):
    """An order-automorphism of ``Lex(n, F)`` given in rational coordinates."""

    def __init__(self, domain: LexCtx, matrix, check: bool = True):
        if not isinstance(domain, LexCtx):
            raise UnsupportedMorphism("Shear needs a Lex domain")
        m = [[rat(x) for x in row] for row in matrix]
        if len(m) != domain.dim or any(len(r) != domain.dim for r in m):
            raise DimensionMismatch(f"Shear on {domain} needs a {domain.dim}x{domain.dim} matrix")
        inv = linalg.inverse(m)
        if inv is None:
            raise NotOrderPreserving("Shear matrix is singular")
        if check:
            for mat, label in ((m, "matrix"), (inv, "inverse")):
                verdict = is_order_preserving(mat, domain, samples=SHEAR_CHECK_SAMPLES)
                if not verdict.ok:
                    raise NotOrderPreserving(
                        f"Shear {label} is not order-preserving, witness {verdict.witness}",
                        verdict.witness,
                    )
        self.domain = domain
        self.codomain = domain
        self._m = tuple(tuple(r) for r in m)
        self._inv = tuple(tuple(r) for r in inv)

    def apply(self, g):
        self._check(g)
        return LexVec(self.domain, tuple(linalg.matvec(self._m, g.flat)))

    def kernel(self):
        return KernelDesc(self.domain, self.domain.n)

    def matrix(self):
        return [list(r) for r in self._m]

    def inverse_matrix(self):
        return [list(r) for r in self._inv]

    def describe(self):
        return {"kind": "shear", "matrix": [[str(x) for x in r] for r in self._m]}

    def __str__(self):
        return "Shear(" + str([[str(x) for x in r] for r in self._m]) + ")"


class Compose(Morphism):
    """Apply ``parts`` left to right."""

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise ValueError("Compose needs at least one part")
        for a, b in zip(parts, parts[1:]):
            if a.codomain != b.domain:
                raise ContextMismatch(f"{a} lands in {a.codomain} but {b} starts at {b.domain}")
        self.parts = tuple(parts)
        self.domain = parts[0].domain
        self.codomain = parts[-1].codomain
        self._m = None
        if isinstance(self.domain, LexCtx):
            m = parts[0].matrix()
            for p in parts[1:]:
                m = linalg.matmul(p.matrix(), m)
            self._m = tuple(tuple(r) for r in m)
        elif not all(isinstance(p, HahnTruncate) for p in parts):
            raise UnsupportedMorphism("Hahn compositions may only chain truncations")
        self._kernel = self._compute_kernel()

    def apply(self, g):
        self._check(g)
        if self._m is not None:
            return LexVec(self.codomain, tuple(linalg.matvec(self._m, g.flat)))
        for p in self.parts:
            g = p.apply(g)
        return g

    def _compute_kernel(self):
        if self._m is None:
            return KernelDesc(self.domain, max(p.cut for p in self.parts))
        dom = self.domain
        null = linalg.nullspace([list(r) for r in self._m], dom.dim)
        red, piv = linalg.rref(null, dom.dim) if null else ([], [])
        start = dom.dim - len(piv)
        if start % dom.k or piv != list(range(start, dom.dim)):
            raise InconsistentVerdict("kernel of an order-preserving map must be convex")
        return KernelDesc(dom, start // dom.k)

    def kernel(self):
        return self._kernel

    def matrix(self):
        if self._m is None:
            return super().matrix()
        return [list(r) for r in self._m]

    def describe(self):
        return {"kind": "compose", "parts": [p.describe() for p in self.parts]}

    def __str__(self):
        return "Compose(" + ", ".join(str(p) for p in self.parts) + ")"


def apply(f: Morphism, g: GroupElement) -> GroupElement:
    return f.apply(g)


def kernel(f: Morphism) -> KernelDesc:
    return f.kernel()


# order preservation ------------------------------------------------------------------


@dataclass(frozen=True)
class OrderVerdict:
    ok: bool
    witness: LexVec | None = None

    def __bool__(self):
        return self.ok


def _block(T, k, row_level, col_level):
    r0, c0 = (row_level - 1) * k, (col_level - 1) * k
    return [T[r0 + i][c0 : c0 + k] for i in range(k)]


def _level_vector(domain: LexCtx, entries: dict) -> LexVec:
    """Element with scalar ``entries[level]`` at the given levels."""
    k = domain.k
    flat = [ZERO] * domain.dim
    for level, s in entries.items():
        s = s if isinstance(s, Scalar) else domain.field.scalar(s)
        flat[(level - 1) * k] = s.a
        if k == 2:
            flat[(level - 1) * k + 1] = s.b
    return LexVec(domain, tuple(flat))


def _block_multiplier(B, field):
    """The scalar c when the block acts as ``x -> c*x``, else None."""
    if field.d is None:
        return field.scalar(B[0][0])
    p, q = B[0][0], B[1][0]
    if B[0][1] == q * field.d and B[1][1] == p:
        return field.scalar(p, q)
    return None


def _non_monotone_witness(B, field) -> Scalar:
    """Positive x with ``B x < 0`` for a block that is not a multiplication."""
    u = field.scalar(B[0][0], B[1][0])
    w = field.scalar(B[0][1], B[1][1])
    root = field.scalar(0, 1)
    det = w - u * root
    a_star = (w + root) / det
    b_star = (-u - 1) / det
    for bits in range(0, 400):
        a = rational_approx(a_star, bits)
        b = rational_approx(b_star, bits)
        x = field.scalar(a, b)
        if x.sign() > 0 and (u * a + w * b).sign() < 0:
            return x
    raise InconsistentVerdict("no witness found for a non-monotone block")


def _apply_block(B, x: Scalar, field) -> Scalar:
    if field.d is None:
        return field.scalar(B[0][0] * x.a)
    return field.scalar(B[0][0] * x.a + B[0][1] * x.b, B[1][0] * x.a + B[1][1] * x.b)


def _structural_order_check(T, domain: LexCtx, codomain: LexCtx) -> LexVec | None:
    k = domain.k
    field = domain.field
    lead_row: dict = {}
    mult: dict = {}
    for i in range(1, domain.n + 1):
        for r in range(1, codomain.n + 1):
            if any(any(row) for row in _block(T, k, r, i)):
                lead_row[i] = r
                break
    for i, r in lead_row.items():
        B = _block(T, k, r, i)
        c = _block_multiplier(B, field)
        if c is None:
            return _level_vector(domain, {i: _non_monotone_witness(B, field)})
        if c.sign() < 0:
            return _level_vector(domain, {i: 1})
        mult[i] = c
    for i in range(1, domain.n + 1):
        if i in lead_row:
            continue
        for j in range(i + 1, domain.n + 1):
            if j in lead_row:
                return _level_vector(domain, {i: 1, j: -1})
    for i in lead_row:
        for j in lead_row:
            if j <= i:
                continue
            if lead_row[j] < lead_row[i]:
                return _level_vector(domain, {i: 1, j: -1})
            if lead_row[j] == lead_row[i]:
                n = (mult[i] / mult[j]).floor() + 1
                return _level_vector(domain, {i: 1, j: -n})
    return None


def _random_positive(domain: LexCtx, rng: SplitMix64) -> LexVec:
    field = domain.field
    i = rng.randint(1, domain.n)
    entries = {}
    for level in range(i, domain.n + 1):
        mag = 10 ** rng.randint(0, 6) if level > i else 1
        a = mpq(rng.randint(-9, 9) * mag, rng.randint(1, 9))
        b = mpq(rng.randint(-9, 9) * mag, rng.randint(1, 9)) if field.d else ZERO
        entries[level] = field.scalar(a, b)
    if entries[i].sign() == 0:
        entries[i] = field.one
    elif entries[i].sign() < 0:
        entries[i] = -entries[i]
    return _level_vector(domain, entries)


def is_order_preserving(T, domain: LexCtx, codomain: LexCtx | None = None,
                        samples: int = 10_000, seed: int = 0) -> OrderVerdict:
    """Decide whether ``v > 0`` implies ``T v >= 0`` for a rational-coordinate matrix.

    The structural test works level by level: the leading nonzero block of
    each domain level must act as multiplication by a positive field
    element, a level that maps to zero forces every later level to map to
    zero, and later levels must land strictly below earlier ones.  Any
    failure comes with an exact witness.  When the verdict is positive,
    ``samples`` random positive vectors are checked as well and a
    counterexample raises :class:`InconsistentVerdict`.
    """
    T = [[rat(x) for x in row] for row in T]
    if codomain is None:
        if len(T) % domain.k:
            raise DimensionMismatch("row count is not a multiple of the field degree")
        codomain = LexCtx(len(T) // domain.k, domain.field)
    if len(T) != codomain.dim or any(len(r) != domain.dim for r in T):
        raise DimensionMismatch(f"matrix must be {codomain.dim}x{domain.dim}")
    witness = _structural_order_check(T, domain, codomain)

    def image(v):
        return LexVec(codomain, tuple(linalg.matvec(T, v.flat)))

    if witness is not None:
        if not (witness.sign() > 0 and image(witness).sign() < 0):
            raise InconsistentVerdict(f"witness {witness} does not refute order preservation")
        return OrderVerdict(False, witness)
    rng = SplitMix64(seed, 0, "order-oracle")
    for _ in range(samples):
        v = _random_positive(domain, rng)
        if image(v).sign() < 0:
            raise InconsistentVerdict(f"structural verdict Yes refuted by {v}")
    return OrderVerdict(True)


# sections and complements -----------------------------------------------------------------


def _split_projection(f: Morphism):
    """Decompose into (pre-shears, projection, post-shears)."""
    parts = f.parts if isinstance(f, Compose) else (f,)
    idx = [i for i, p in enumerate(parts) if isinstance(p, Projection)]
    if len(idx) != 1 or not all(isinstance(p, Shear) for i, p in enumerate(parts) if i != idx[0]):
        raise UnsupportedMorphism("expected a Projection composed with Shears")
    i = idx[0]
    return parts[:i], parts[i], parts[i + 1 :]


def section_subgroup(f: Morphism, T) -> Subgroup:
    """Graph subgroup of the Q-linear section ``delta -> (delta, T delta)``.

    ``T`` maps target rational coordinates to kernel rational coordinates of
    the projection; shears before and after the projection are undone so
    that ``f`` restricted to the result is a bijection onto the target.
    """
    pre, proj, post = _split_projection(f)
    dom = proj.domain
    tdim = proj.codomain.dim
    kdim = dom.dim - tdim
    T = [[rat(x) for x in row] for row in T]
    if len(T) != kdim or any(len(r) != tdim for r in T):
        raise DimensionMismatch(f"section matrix must be {kdim}x{tdim}")
    post_inv = linalg.identity(tdim)
    for s in post:
        post_inv = linalg.matmul(post_inv, s.inverse_matrix())
    pre_inv = linalg.identity(dom.dim)
    for s in pre:
        pre_inv = linalg.matmul(pre_inv, s.inverse_matrix())
    gens = []
    for j in range(tdim):
        delta = [row[j] for row in post_inv]
        graph = delta + linalg.matvec(T, delta)
        gens.append(LexVec(dom, tuple(linalg.matvec(pre_inv, graph))))
    return Subgroup(f.domain, gens, "Q")


def complement_of_kernel(f: Morphism, window=None) -> Subgroup:
    """A Q-span meeting ``ker f`` trivially and completing it to the window.

    Lex domains: the kernel basis is extended by unit vectors in significance
    order.  Hahn truncations need an explicit finite ``window`` of exponents.
    """
    dom = f.domain
    if isinstance(dom, LexCtx):
        chosen = []
        current = [list(v) for v in f.kernel().basis_vectors()]
        r = linalg.rank(current, dom.dim) if current else 0
        for i in range(dom.dim):
            cand = current + [list(dom.unit(i).flat)]
            r2 = linalg.rank(cand, dom.dim)
            if r2 > r:
                current, r = cand, r2
                chosen.append(dom.unit(i))
        return Subgroup(dom, chosen, "Q")
    if window is None:
        raise WindowError("complement_of_kernel on a Hahn group needs a finite exponent window")
    cut = f.kernel().threshold
    gens = []
    for e in sorted({rat(e) for e in window}, reverse=True):
        if e >= cut:
            gens.append(dom.monomial(e, 1))
            if dom.k == 2:
                gens.append(dom.monomial(e, dom.field.scalar(0, 1)))
    return Subgroup(dom, gens, "Q")
