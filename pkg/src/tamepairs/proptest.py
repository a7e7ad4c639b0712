"""Built-in property suites run by ``tamepairs proptest``.

Each property draws a value from the seeded generator, checks it exactly,
and on failure shrinks the value before reporting it as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from gmpy2 import mpq

from .harness import Generator, shrink
from .hahnfield import XQ, series_inv, st_positive, valuation
from .ogroup import HahnCtx, LexCtx
from .report import Report, failed, passed
from .rng import SplitMix64
from .scalars import QQ, quadratic_field
from .syntax import parse_scalar_parts
from .tame import check_cross_section, decide_tame, is_cofinal, refute_candidate, standard_part

Q2 = quadratic_field(2)


@dataclass(frozen=True)
class Property:
    name: str
    suite: str
    draw: Callable
    holds: Callable


def _props() -> list:
    out = []

    def prop(suite, name):
        def deco(pair):
            draw, holds = pair()
            out.append(Property(name, suite, draw, holds))
            return pair
        return deco

    # scalars ---------------------------------------------------------------
    @prop("scalars", "trichotomy_and_transitivity")
    def _():
        return (lambda g: (g.scalar(Q2), g.scalar(Q2), g.scalar(Q2)),
                lambda v: (sum((v[0] < v[1], v[0] == v[1], v[0] > v[1])) == 1
                           and (not (v[0] <= v[1] <= v[2]) or v[0] <= v[2])))

    @prop("scalars", "order_compatibility")
    def _():
        def holds(v):
            x, y, z = v
            if x < y and not x + z < y + z:
                return False
            return not (x < y and z > 0) or x * z < y * z
        return (lambda g: (g.scalar(Q2), g.scalar(Q2), g.scalar(Q2)), holds)

    @prop("scalars", "inverse_and_sign")
    def _():
        def holds(v):
            x, y = v
            if x and x * x.inv() != 1:
                return False
            return (x * y).sign() == x.sign() * y.sign()
        return (lambda g: (g.scalar(Q2), g.scalar(Q2)), holds)

    @prop("scalars", "print_parse_roundtrip")
    def _():
        def holds(v):
            a, b = parse_scalar_parts(str(v[0]), 2)
            return a == v[0].a and b == v[0].b
        return (lambda g: (g.scalar(Q2),), holds)

    # ogroup ------------------------------------------------------------------
    L3 = LexCtx(3, QQ)
    H = HahnCtx(QQ)

    @prop("ogroup", "translation_invariance")
    def _():
        return (lambda g: (g.element(L3), g.element(L3), g.element(L3)),
                lambda v: not (v[0] < v[1]) or v[0] + v[2] < v[1] + v[2])

    @prop("ogroup", "divisibility")
    def _():
        def holds(v):
            a, n = v
            n = int(abs(n)) % 8 + 2
            part = a / n
            acc = a.ctx.zero()
            for _ in range(n):
                acc = acc + part
            return acc == a
        return (lambda g: (g.element(H), mpq(g.rng.randint(2, 9))), holds)

    @prop("ogroup", "dense_midpoint")
    def _():
        def holds(v):
            a, b = sorted(v)
            if a == b:
                return True
            m = (a + b) / 2
            return a < m < b
        return (lambda g: (g.element(H), g.element(H)), holds)

    @prop("ogroup", "lead_of_sum")
    def _():
        def holds(v):
            a, b = v
            s = a + b
            if not s or not a or not b:
                return True
            return not (s.lead() < a.lead() and s.lead() < b.lead())
        return (lambda g: (g.element(L3), g.element(L3)), holds)

    # structure and tame ----------------------------------------------------------
    L2q = LexCtx(2, Q2)

    @prop("structure", "graph_sections_are_cross_sections")
    def _():
        def draw(g):
            f, _T, S = g.graph_section(L3 if g.rng.chance(1, 2) else L2q)
            return (S, f)
        return (draw, lambda v: bool(check_cross_section(v[1], v[0])))

    @prop("structure", "kernel_matches_apply")
    def _():
        def draw(g):
            f = g.morphism(L3)
            return (g.element(L3), f)
        return (draw, lambda v: v[1].kernel().contains(v[0]) == (not v[1].apply(v[0])))

    @prop("structure", "coords_recover_combination")
    def _():
        def draw(g):
            S = g.subgroup(L2q)
            return (S, tuple(g.rational() for _ in range(S.dim)))
        def holds(v):
            S, c = v
            if len(c) != S.dim:
                return True
            return S.coords(S.combine(list(c))) == list(c)
        return (draw, holds)

    @prop("tame", "nearest_is_unrefutable")
    def _():
        def draw(g):
            S = g.subgroup(L3)
            return (S, g.element(L3))
        def holds(v):
            S, b = v
            r = standard_part(S, b)
            if r.defined:
                return refute_candidate(S, b, r.value) is None and standard_part(S, r.value).value == r.value
            return True
        return (draw, holds)

    @prop("tame", "structural_tameness_agrees_with_st")
    def _():
        def draw(g):
            return (g.subgroup(L2q), g.element(L2q))
        def holds(v):
            S, b = v
            t = decide_tame(S, samples=0)
            r = standard_part(S, b)
            return not (t and r.kind == "no_nearest")
        return (draw, holds)

    @prop("tame", "st_additive_on_tame_cofinal")
    def _():
        def draw(g):
            return (g.subgroup(L3), g.element(L3), g.element(L3))
        def holds(v):
            S, a, b = v
            if not (is_cofinal(S) and decide_tame(S, samples=0)):
                return True
            sa, sb, ss = (standard_part(S, x).value for x in (a, b, a + b))
            return ss == sa + sb and (not a <= b or sa <= sb)
        return (draw, holds)

    # hahnfield -----------------------------------------------------------------
    @prop("hahnfield", "ring_axioms")
    def _():
        def holds(v):
            a, b, c = v
            return a * b == b * a and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
        return (lambda g: (g.series(), g.series(), g.series()), holds)

    @prop("hahnfield", "inverse_window")
    def _():
        def holds(v):
            (a,) = v
            p = series_inv(a, 3)
            diff = p.series * a - 1
            if p.floor is None:
                return not diff
            return valuation(p.series) == -valuation(a) and all(e < p.floor + valuation(a) for e, _ in diff.terms)
        return (lambda g: (g.series(),), holds)

    @prop("hahnfield", "xq_st_multiplicative")
    def _():
        def holds(v):
            r, s = abs(v[0]), abs(v[1])
            return st_positive(XQ, r * s).element == st_positive(XQ, r).element * st_positive(XQ, s).element
        return (lambda g: (g.series(), g.series()), holds)

    return out


PROPERTIES = _props()
SUITES = ("all",) + tuple(sorted({p.suite for p in PROPERTIES}))


def run_suite(suite: str = "all", seed: int = 0, cases: int = 200, fail_fast: bool = False) -> Report:
    rep = Report("proptest", header={"suite": suite, "seed": seed, "cases": cases})
    for p in PROPERTIES:
        if suite != "all" and p.suite != suite:
            continue
        bad = 0
        witness = None
        for i in range(cases):
            gen = Generator(SplitMix64(seed, i, f"proptest:{p.name}"), 4)
            value = p.draw(gen)
            if not p.holds(value):
                bad += 1
                if witness is None:
                    witness = shrink(value, lambda v: not p.holds(v))
                if fail_fast:
                    break
        name = f"{p.suite}.{p.name}"
        if bad:
            shown = "; ".join(str(x) for x in witness) if isinstance(witness, tuple) else str(witness)
            rep.add(failed(name, "property violated (witness shrunk)", shown, samples=cases,
                           counterexamples=bad))
            if fail_fast:
                break
        else:
            rep.add(passed(name, samples=cases))
    return rep
