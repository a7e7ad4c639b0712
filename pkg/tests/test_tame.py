from gmpy2 import mpq
import pytest

from oracles import is_unique_nearest, nothing_between, refutes
from tamepairs.errors import NonDivisibleSubgroup
from tamepairs.harness import Generator
from tamepairs.ogroup import HahnCtx, LexCtx
from tamepairs.rng import SplitMix64
from tamepairs.scalars import QQ, quadratic_field
from tamepairs.structure import Compose, Projection, Shear, Subgroup, section_subgroup
from tamepairs.tame import (
    EXACT,
    NEAREST_ABOVE,
    NEAREST_BELOW,
    NO_NEAREST,
    NOT_BOUNDED,
    bounded_sample,
    check_cross_section,
    complement_checks,
    decide_tame,
    equivalence_report,
    infinitesimal,
    is_bounded,
    is_cofinal,
    refute_candidate,
    section_inverse,
    standard_part,
)

Q2 = quadratic_field(2)
L1q = LexCtx(1, Q2)
L2 = LexCtx(2, QQ)
L2q = LexCtx(2, Q2)
L3 = LexCtx(3, QQ)
H = HahnCtx(QQ)


def gen(label, seed=21):
    return Generator(SplitMix64(seed, 0, label), 4)


# boundedness and infinitesimals --------------------------------------------------------


def test_bounded_examples():
    S = Subgroup(L2, ["(1, 0)"])
    assert is_bounded(S, L2.parse("(0, 999)"))
    assert not is_bounded(Subgroup(H, ["x^0"]), H.parse("x^1"))
    assert is_bounded(S, L2.parse("(5, 1)"))


def test_infinitesimal_level():
    S = Subgroup(L3, ["(1, 0, 0)", "(0, 1, 0)"])
    assert infinitesimal(S, L3.parse("(0, 0, 7)"))
    assert not infinitesimal(S, L3.parse("(0, 1/100, 0)"))


# standard parts ---------------------------------------------------------------------------


def test_nearest_below_example():
    S = Subgroup(L2, ["(1, 0)"])
    r = standard_part(S, L2.parse("(3/2, 7)"))
    assert r.kind == NEAREST_BELOW and r.value == L2.parse("(3/2, 0)")
    r = standard_part(S, L2.parse("(3/2, -7)"))
    assert r.kind == NEAREST_ABOVE and r.value == L2.parse("(3/2, 0)")


def test_exact_on_members():
    g = gen("exact")
    for _ in range(50):
        S = g.subgroup(L2q)
        a = S.combine([g.rational() for _ in range(S.dim)])
        r = standard_part(S, a)
        assert r.kind == EXACT and r.value == a


def test_not_bounded():
    S = Subgroup(L2, ["(0, 1)"])
    assert standard_part(S, L2.parse("(1, 0)")).kind == NOT_BOUNDED


def test_no_nearest_sqrt2():
    S = Subgroup(L1q, ["(1)"])
    b = L1q.parse("(sqrt(2))")
    r = standard_part(S, b)
    assert r.kind == NO_NEAREST
    assert r.residual == b - r.value
    assert refutes(S, b, r.value, r.certificate)
    # every rational candidate is refuted exactly
    rng = SplitMix64(0, 0, "candidates")
    for _ in range(200):
        q = mpq(rng.randint(-3000, 3000), rng.randint(1, 1000))
        a = L1q.element([Q2.scalar(q)])
        assert refutes(S, b, a, refute_candidate(S, b, a))


def test_z_span_raises():
    with pytest.raises(NonDivisibleSubgroup):
        standard_part(Subgroup(L2, ["(1, 0)"], "Z"), L2.parse("(1, 1)"))


def tame_subgroups(count, seed=3):
    g = gen("tame-pool", seed)
    out = []
    while len(out) < count:
        ctx = g.rng.choice((L2, L3, L2q, H))
        if isinstance(ctx, LexCtx) and g.rng.chance(1, 2):
            if ctx.n == 1:
                continue
            out.append(g.graph_section(ctx)[2])
            continue
        S = g.subgroup(ctx)
        if decide_tame(S, samples=0):
            out.append(S)
    return out


def test_standard_parts_against_oracle():
    g = gen("st-oracle")
    rng = SplitMix64(1, 0, "oracle")
    for S in tame_subgroups(60):
        for _ in range(5):
            b = bounded_sample(S, g)
            r = standard_part(S, b)
            assert r.defined, (S, b, r)
            assert r.value in S
            if r.kind == EXACT:
                assert r.value == b
            elif r.kind == NEAREST_BELOW:
                assert r.value < b
            else:
                assert r.value > b
            assert nothing_between(S, r.value, b, rng)
            assert is_unique_nearest(S, r.value, b, rng)


# tameness -------------------------------------------------------------------------------------


def test_tameness_examples():
    assert decide_tame(Subgroup(L2q, ["(1, 0)", "(sqrt(2), 0)", "(0, 1)", "(0, sqrt(2))"]))
    v = decide_tame(Subgroup(L1q, ["(1)"]))
    assert not v and v.witness == L1q.parse("(sqrt(2))")
    assert decide_tame(Subgroup(L2q, ["(1, 0)", "(sqrt(2), 1)"]))
    v = decide_tame(Subgroup(L2q, ["(1, 0)"]))
    assert not v and v.witness == L2q.parse("(sqrt(2), 0)")


def test_hahn_two_levels_not_tame():
    v = decide_tame(Subgroup(H, ["x^0", "x^-1"]))
    assert not v
    assert standard_part(Subgroup(H, ["x^0", "x^-1"]), v.witness).kind == NO_NEAREST


def test_non_tame_witnesses_are_certified():
    g = gen("witness")
    count = 0
    while count < 40:
        S = g.subgroup(g.rng.choice((L3, L2q, H)))
        v = decide_tame(S, samples=0)
        if v:
            continue
        count += 1
        r = standard_part(S, v.witness)
        assert r.kind == NO_NEAREST
        assert refutes(S, v.witness, r.value, r.certificate)


def test_cofinal():
    assert is_cofinal(Subgroup(L2, ["(1, 5)"]))
    assert not is_cofinal(Subgroup(L2, ["(0, 1)"]))
    assert not is_cofinal(Subgroup(H, ["x^3"]))


# cross-sections ---------------------------------------------------------------------------------


def test_cross_section_examples():
    f = Projection(L2, 1)
    assert check_cross_section(f, Subgroup(L2, ["(1, 0)"]))
    v = check_cross_section(f, Subgroup(L2, ["(0, 1)"]))
    assert not v and "injectiv" in v.reason
    v = check_cross_section(f, Subgroup(L2, ["(1, 0)"], "Z"))
    assert not v and "surjectiv" in v.reason
    assert v.witness == f.codomain.parse("(1/2)")


def test_section_inverse_round_trip():
    g = gen("inverse")
    for _ in range(20):
        f, _T, S = g.graph_section(L3)
        for _ in range(20):
            d = g.element(f.codomain)
            s = section_inverse(f, S, d)
            assert s in S and f.apply(s) == d


def test_complement_checks_pass():
    fs = Compose([Shear(L2, [[1, 0], [1, 1]]), Projection(L2, 1)])
    from tamepairs.structure import complement_of_kernel
    D = complement_of_kernel(fs)
    assert all(c.passed for c in complement_checks(fs, D))


# the equivalence report ------------------------------------------------------------------------


def test_graph_section_passes_everything():
    f = Projection(L2q, 1)
    S = section_subgroup(f, [[0, 1], [0, 0]])
    rep = equivalence_report(f, S, cases=300)
    assert rep.ok
    assert rep.result == {"isomorphism_condition": True, "kernel_condition": True,
                          "sign_condition": True, "equivalence_holds": True}


def test_z_span_fails_cross_section_and_divisibility():
    f = Projection(L2, 1)
    rep = equivalence_report(f, Subgroup(L2, ["(1, 0)"], "Z"), cases=100)
    assert rep.get("cross_section").failed and rep.get("divisible").failed
    assert rep.result["equivalence_holds"]
    assert rep.get("st_additive").status == "not_evaluated"


def test_rational_line_over_quadratic_field():
    f = Projection(L2q, 1)
    rep = equivalence_report(f, Subgroup(L2q, ["(1, 0)"]), cases=100)
    assert rep.get("cross_section").failed
    tame = rep.get("tame")
    assert tame.failed and tame.witness == "(1*sqrt(2), 0)"
    assert rep.result["equivalence_holds"]
