import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from tamepairs.errors import DivisionByZero, InsufficientPrecision, NonPositive, ZeroElement, NotInValuationRing
from tamepairs.hahnfield import (
    XQ,
    Monomial,
    PrecSeries,
    coeff_xq,
    floor_log,
    in_vg,
    in_vv,
    induced_valuation_check,
    non_tame_witness,
    rational_log,
    refute_monomial,
    residue,
    scalar_log,
    series_inv,
    series_ring,
    st_positive,
    v_compat_check,
    valuation,
    verify_monomial_refutation,
)
from tamepairs.harness import Generator
from tamepairs.rng import SplitMix64
from tamepairs.scalars import QQ, quadratic_field
from tamepairs.tame import EXACT, NO_NEAREST

Q2 = quadratic_field(2)
R = series_ring(QQ)
R2 = series_ring(Q2)
G2 = coeff_xq(2)


def gen(label):
    return Generator(SplitMix64(31, 0, label), 4)


# series arithmetic ------------------------------------------------------------------------


def test_arithmetic_examples():
    assert R.parse("x^1 + 2") * R.parse("x^1 - 2") == R.parse("x^2 - 4")
    assert abs(R.parse("-3*x^(-1/2)")) == R.parse("3*x^(-1/2)")
    assert valuation(R.parse("5*x^3 + x^-7")) == 3


def test_valuation_of_zero_is_undefined():
    with pytest.raises(ZeroElement):
        valuation(R.zero)


def test_valuation_is_multiplicative():
    g = gen("vmul")
    for _ in range(1000):
        a, b = g.series(Q2), g.series(Q2)
        assert valuation(a * b) == valuation(a) + valuation(b)


def test_ring_axioms_seeded():
    g = gen("ring")
    for _ in range(200):
        a, b, c = g.series(), g.series(), g.series()
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert (a * b).sign() == a.sign() * b.sign()


# truncated inverses ------------------------------------------------------------------------


def test_inverse_of_monomial_is_exact():
    p = series_inv(R.parse("x^1"), 5)
    assert p.floor is None and p.series == R.parse("x^-1")


def test_inverse_of_one_plus_small():
    p = series_inv(R.parse("1 + x^-1"), 3)
    assert p.series == R.parse("1 - x^-1 + x^-2 - x^-3")
    assert p.truncated
    assert str(p) == "1*x^0 - 1*x^-1 + 1*x^-2 - 1*x^-3 + (terms below x^-3)"
    # multiply back: the error lies strictly below the window
    diff = p.series * R.parse("1 + x^-1") - 1
    assert valuation(diff) < -3


def test_inverse_valuation_seeded():
    g = gen("inv")
    for _ in range(100):
        a = g.series(Q2)
        p = series_inv(a, 2)
        assert valuation(p.series) == -valuation(a)
        diff = p.series * a - 1
        assert not diff or p.floor is not None and valuation(diff) < p.floor + valuation(a)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        series_inv(R.zero, 3)


def test_comparison_outside_window_raises():
    p = series_inv(R.parse("1 + x^-1"), 3)
    q = PrecSeries.exact(p.series)
    with pytest.raises(InsufficientPrecision):
        p.compare(q)


# rational powers --------------------------------------------------------------------------------


def log_oracle(base, c):
    """p with base^p = c via prime factorisations: exponent vectors must be proportional."""
    fb = sympy.factorint(int(base.numerator)) | {k: -v for k, v in sympy.factorint(int(base.denominator)).items()}
    fc = sympy.factorint(int(c.numerator)) | {k: -v for k, v in sympy.factorint(int(c.denominator)).items()}
    fb.pop(1, None)
    fc.pop(1, None)
    if not fb:
        return mpq(0) if not fc else None
    if set(fc) - set(fb):
        return None
    ratios = {mpq(fc.get(p, 0), e) for p, e in fb.items()}
    return ratios.pop() if len(ratios) == 1 else None


def test_rational_log_examples():
    assert rational_log(mpq(8), mpq(1, 4)) == mpq(-2, 3)
    assert rational_log(mpq(6), mpq(3)) is None
    assert rational_log(mpq(2), mpq(3)) is None


positive = st.builds(lambda a, b: mpq(a, b), st.integers(1, 400), st.integers(1, 60))


@settings(max_examples=200)
@given(positive.filter(lambda q: q != 1), st.integers(-4, 4), st.integers(1, 3))
def test_rational_log_matches_factorisation_on_powers(base, num, den):
    # construct c = base^(num/den) only when the root is rational
    c = base ** num
    root = sympy.root(sympy.Rational(int(c.numerator), int(c.denominator)), den)
    if not root.is_Rational:
        assert rational_log(base, c) == mpq(num)
        return
    c = mpq(int(root.p), int(root.q))
    assert rational_log(base, c) == log_oracle(base, c)


@settings(max_examples=200)
@given(positive.filter(lambda q: q != 1), positive)
def test_rational_log_matches_factorisation(base, c):
    assert rational_log(base, c) == log_oracle(base, c)


def test_scalar_log_sees_square_roots():
    assert scalar_log(mpq(2), Q2.scalar(0, 1)) == mpq(1, 2)
    assert scalar_log(mpq(2), Q2.scalar(1, 1)) is None


def test_floor_log_brackets():
    g = gen("floor")
    for _ in range(200):
        c = g.positive_scalar(Q2)
        p0 = floor_log(mpq(2), c)
        assert mpq(2) ** p0 <= c < mpq(2) ** (p0 + 1)


# positive standard parts ---------------------------------------------------------------------------


def test_st_is_leading_monomial():
    r = st_positive(XQ, R.parse("3*x^(5/2) + x^0"))
    assert r.element == XQ.x(mpq(5, 2))
    assert st_positive(XQ, R.const(2)).element == XQ.one


def test_st_rejects_non_positive():
    with pytest.raises(NonPositive):
        st_positive(XQ, R.parse("-x^0"))


def test_monomial_group_without_nearest():
    r = st_positive(G2, R.parse("3*x^0"))
    assert r.kind == NO_NEAREST
    assert non_tame_witness(G2) == R.parse("3*x^0")
    assert non_tame_witness(XQ) is None


def test_monomial_refutations_verify():
    r = R.parse("3*x^0")
    rng = SplitMix64(2, 0, "mono")
    for _ in range(300):
        g = Monomial(G2, mpq(rng.randint(-40, 40), rng.randint(1, 6)), mpq(rng.randint(-3, 3), rng.randint(1, 3)))
        h = refute_monomial(G2, r, g)
        assert verify_monomial_refutation(r, g, h)


def test_exact_powers_have_nearest():
    assert st_positive(G2, R.parse("4*x^1")).kind == EXACT
    assert st_positive(coeff_xq(2), R2.parse("sqrt(2)*x^0")).kind == EXACT


# valuation ring and residue --------------------------------------------------------------------------


def test_valuation_ring_examples():
    assert in_vg(XQ, R.parse("1 + x^-3"))
    assert not in_vg(XQ, R.parse("x^1"))
    assert in_vv(R.parse("x^-2"))


def test_residue_examples():
    assert residue(R.parse("3 + 5*x^-2")) == QQ.scalar(3)
    assert residue(R.parse("x^-1")) == QQ.zero
    with pytest.raises(NotInValuationRing):
        residue(R.parse("x^1"))


def test_residue_is_multiplicative_seeded():
    g = gen("residue")
    for _ in range(1000):
        a, b = g.series(max_exp=0), g.series(max_exp=0)
        assert residue(a * b) == residue(a) * residue(b)
        assert residue(a + b) == residue(a) + residue(b)


# suites -------------------------------------------------------------------------------------------------


def test_induced_valuation_suite_passes_for_xq():
    rep = induced_valuation_check(XQ, cases=300)
    assert rep.ok, rep.to_text()


def test_induced_valuation_suite_reports_non_tame_group():
    rep = induced_valuation_check(G2, cases=50)
    assert rep.get("tame").failed
    assert rep.get("tame").witness == "3*x^0"
    assert all(c.status == "not_evaluated" for c in rep.checks[1:])


def test_valuation_axioms_suite():
    assert v_compat_check(Q2, cases=300).ok
