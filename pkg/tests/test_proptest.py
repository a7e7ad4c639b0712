from gmpy2 import mpq

import tamepairs.proptest as proptest
from tamepairs.proptest import PROPERTIES, SUITES, Property, run_suite


def test_every_suite_passes():
    rep = run_suite("all", seed=3, cases=40)
    assert rep.ok, rep.to_text()
    assert len(rep.checks) == len(PROPERTIES)
    assert set(SUITES) == {"all", "scalars", "ogroup", "structure", "tame", "hahnfield"}


def test_failing_property_is_shrunk(monkeypatch):
    bogus = Property("below_seven", "scalars",
                     lambda g: (mpq(g.rng.randint(50, 90), g.rng.randint(1, 3)),),
                     lambda v: v[0] < 7)
    monkeypatch.setattr(proptest, "PROPERTIES", [bogus])
    rep = run_suite("scalars", cases=10)
    chk = rep.get("scalars.below_seven")
    assert chk.failed and chk.counterexamples == 10
    assert chk.witness == "7"


def test_fail_fast_stops_after_first_counterexample(monkeypatch):
    bogus = Property("never", "tame", lambda g: (mpq(1),), lambda v: False)
    monkeypatch.setattr(proptest, "PROPERTIES", [bogus, bogus])
    rep = run_suite("all", cases=10, fail_fast=True)
    assert len(rep.checks) == 1 and rep.checks[0].counterexamples == 1
