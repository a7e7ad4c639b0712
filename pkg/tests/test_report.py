import json

from tamepairs.report import FAIL, NOT_EVALUATED, PASS, Check, Report, failed, passed, skipped


def test_statuses_and_ok():
    rep = Report("demo", header={"b": 1, "a": 2})
    rep.add(passed("one", samples=3))
    rep.add(skipped("two", "not applicable"))
    assert rep.ok
    rep.add(failed("three", "broken", "(1, 0)", samples=5, counterexamples=2))
    assert not rep.ok
    assert rep.get("three").witness == "(1, 0)"
    assert [c.status for c in rep.checks] == [PASS, NOT_EVALUATED, FAIL]


def test_json_is_sorted_and_round_trips():
    rep = Report("demo", header={"b": 1, "a": 2})
    rep.add(passed("one"))
    text = rep.to_json()
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text)["checks"][0]["name"] == "one"


def test_text_shows_witness():
    rep = Report("demo")
    rep.add(failed("x", "bad", "3*x^0"))
    out = rep.to_text()
    assert "witness: 3*x^0" in out and "overall: FAIL" in out


def test_check_fields():
    c = Check("n", PASS)
    assert set(c.to_dict()) == {"name", "status", "detail", "witness", "samples", "counterexamples",
                                "hypotheses"}
