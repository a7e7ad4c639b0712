"""Loading, validating and executing scenario files.

A scenario is a JSON document (``schema_version`` 1) naming ambient groups,
subgroups, morphisms and monomial groups over one coefficient field, plus
an ordered list of queries.  The published schema lives in
``tamepairs/schemas/scenario.schema.json`` and is described in
``docs/scenario-format.md``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import ParseError, TamePairsError
from .hahnfield import (
    XQ,
    MonomialGroup,
    as_series,
    coeff_xq,
    induced_valuation_check,
    refute_monomial,
    residue,
    rev_value,
    series_ring,
    st_positive,
    v_compat_check,
    valuation,
    verify_monomial_refutation,
)
from .ogroup import HahnCtx, LexCtx
from .report import Report, failed, passed
from .scalars import QQ, FieldCtx, rat
from .structure import (
    Compose,
    HahnTruncate,
    Projection,
    Shear,
    Subgroup,
    complement_of_kernel,
    section_subgroup,
)
from .tame import (
    NO_NEAREST,
    check_cross_section,
    complement_checks,
    decide_tame,
    equivalence_report,
    standard_part,
    verify_refutation,
)

SCHEMA_VERSION = 1


class ScenarioError(TamePairsError):
    """Malformed, invalid or unresolvable scenario input (exit code 2)."""


def _schema(name: str) -> dict:
    text = resources.files("tamepairs").joinpath("schemas").joinpath(f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def scenario_schema() -> dict:
    return _schema("scenario")


def report_schema() -> dict:
    return _schema("report")


def bundled_names() -> list:
    root = resources.files("tamepairs").joinpath("scenarios")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve_path(ref: str):
    """A scenario path, or the bundled scenario of that name."""
    p = Path(ref)
    if p.exists():
        return p
    if ref in bundled_names():
        return resources.files("tamepairs").joinpath("scenarios").joinpath(f"{ref}.json")
    raise ScenarioError(f"no scenario file or bundled scenario named {ref!r}")


def load_text(text: str, source: str = "<scenario>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    validate(doc, source)
    return doc


def load(ref: str) -> dict:
    path = resolve_path(ref)
    return load_text(path.read_text("utf-8"), str(ref))


def validate(doc, source: str = "<scenario>"):
    if isinstance(doc, dict) and doc.get("schema_version") not in (None, SCHEMA_VERSION):
        raise ScenarioError(f"{source}: unsupported schema_version {doc.get('schema_version')!r}")
    validator = jsonschema.Draft202012Validator(scenario_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ScenarioError(f"{source}: schema violation at {where}: {e.message}")


# building ------------------------------------------------------------------------------


@dataclass
class Scenario:
    name: str
    field: FieldCtx
    ambients: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    subgroups: dict = field(default_factory=dict)
    monomial_groups: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)


def _lookup(table: dict, kind: str, name: str, where: str):
    if name not in table:
        raise ScenarioError(f"{where}: undefined {kind} {name!r}")
    return table[name]


def _rational(x, where):
    try:
        return rat(x if isinstance(x, str) else int(x))
    except (TamePairsError, TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}: bad rational {x!r}: {exc}") from None


def _matrix(rows, where):
    return [[_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]


def _element(ctx, text, where):
    try:
        return ctx.parse(text)
    except ParseError as exc:
        raise ScenarioError(f"{where}: column {exc.column}: {exc}") from None
    except TamePairsError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _monomial_group(desc, where) -> MonomialGroup:
    if "monomial_group" in desc:
        desc = desc["monomial_group"]
    if desc["kind"] == "xq":
        return XQ
    try:
        return coeff_xq(_rational(desc["base"], where))
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def build(doc: dict, name: str = "scenario") -> Scenario:
    """Resolve every name in a validated scenario document."""
    fdesc = doc["field"]
    try:
        fld = QQ if fdesc["kind"] == "Q" else FieldCtx(fdesc["d"])
    except ValueError as exc:
        raise ScenarioError(f"field: {exc}") from None
    scn = Scenario(doc.get("name", name), fld)
    for n, a in doc.get("ambients", {}).items():
        scn.ambients[n] = LexCtx(a["n"], fld) if a["kind"] == "lex" else HahnCtx(fld)

    mdocs = doc.get("morphisms", {})

    def resolve(n, stack):
        if n in scn.morphisms:
            return
        if n in stack:
            raise ScenarioError(f"morphisms/{n}: cyclic composition")
        m = mdocs[n]
        if m["kind"] == "compose":
            for p in m["parts"]:
                if p in mdocs:
                    resolve(p, stack | {n})
        scn.morphisms[n] = _morphism(scn, m, f"morphisms/{n}")

    for n in mdocs:
        resolve(n, frozenset())

    for n, g in doc.get("monomial_groups", {}).items():
        scn.monomial_groups[n] = _monomial_group(g, f"monomial_groups/{n}")

    for n, s in doc.get("subgroups", {}).items():
        scn.subgroups[n] = _subgroup(scn, s, f"subgroups/{n}")
    scn.queries = list(doc["queries"])
    for i, q in enumerate(scn.queries):
        _check_query_names(scn, q, f"queries/{i}")
    return scn


def _morphism(scn: Scenario, m: dict, where: str):
    try:
        kind = m["kind"]
        if kind == "compose":
            return Compose([_lookup(scn.morphisms, "morphism", p, where) for p in m["parts"]])
        ctx = _lookup(scn.ambients, "ambient", m["ambient"], where)
        if kind == "projection":
            return Projection(ctx, m["keep"])
        if kind == "hahn_truncate":
            return HahnTruncate(ctx, _rational(m["cut"], where))
        return Shear(ctx, _matrix(m["matrix"], where + "/matrix"))
    except ScenarioError:
        raise
    except TamePairsError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _subgroup(scn: Scenario, s: dict, where: str) -> Subgroup:
    try:
        if "generators" in s:
            ctx = _lookup(scn.ambients, "ambient", s["ambient"], where)
            gens = [_element(ctx, g, f"{where}/generators/{i}") for i, g in enumerate(s["generators"])]
            return Subgroup(ctx, gens, s.get("ring", "Q"))
        if "section_of" in s:
            f = _lookup(scn.morphisms, "morphism", s["section_of"], where)
            return section_subgroup(f, _matrix(s["matrix"], where + "/matrix"))
        f = _lookup(scn.morphisms, "morphism", s["complement_of"], where)
        window = [_rational(e, where) for e in s["window"]] if "window" in s else None
        return complement_of_kernel(f, window)
    except ScenarioError:
        raise
    except TamePairsError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _check_query_names(scn: Scenario, q: dict, where: str):
    if "subgroup" in q:
        _lookup(scn.subgroups, "subgroup", q["subgroup"], where)
    if "morphism" in q:
        _lookup(scn.morphisms, "morphism", q["morphism"], where)
    if isinstance(q.get("group"), str):
        _lookup(scn.monomial_groups, "monomial group", q["group"], where)


# execution ---------------------------------------------------------------------------------


def _group(scn: Scenario, ref, where) -> MonomialGroup:
    if isinstance(ref, str):
        return _lookup(scn.monomial_groups, "monomial group", ref, where)
    return _monomial_group(ref, where)


def _series(scn: Scenario, text: str, where: str):
    ring = series_ring(scn.field)
    try:
        return ring.parse(text)
    except ParseError as exc:
        raise ScenarioError(f"{where}: column {exc.column}: {exc}") from None
    except TamePairsError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def run_query(scn: Scenario, q: dict, seed: int = 0, cases: int = 1000, index: int = 0) -> Report:
    where = f"queries/{index}"
    try:
        rep = _dispatch(scn, q, seed, cases, where)
    except ScenarioError:
        raise
    except TamePairsError as exc:
        raise ScenarioError(f"{where}: {type(exc).__name__}: {exc}") from None
    rep.header.setdefault("query", q.get("label", q["cmd"]))
    return rep


def _dispatch(scn, q, seed, cases, where) -> Report:
    cmd = q["cmd"]
    if cmd == "st":
        S = scn.subgroups[q["subgroup"]]
        b = _element(S.ambient, q["element"], where + "/element")
        res = standard_part(S, b)
        rep = Report("st", header={"subgroup": str(S), "element": str(b)}, result=res.to_dict())
        if res.defined:
            rep.add(passed("nearest_element", str(res)))
        elif res.kind == NO_NEAREST:
            rep.add(failed("nearest_element", "no element of S is nearest; S is not tame", b))
            ok = verify_refutation(S, b, res.value, res.certificate)
            rep.add(passed("certificate_verifies", f"|b - delta0| >= {res.certificate}") if ok
                    else failed("certificate_verifies", "certificate does not re-verify", res.certificate))
        else:
            rep.add(failed("nearest_element", "b is not bounded by S", b))
        return rep
    if cmd == "st-positive":
        G = _group(scn, q["group"], where)
        r = _series(scn, q["series"], where + "/series")
        res = st_positive(G, r)
        rep = Report("st_positive", header={"group": str(G), "series": str(r)}, result=res.to_dict())
        if res.defined:
            rep.add(passed("nearest_element", str(res)))
        else:
            rep.add(failed("nearest_element", "G has no nearest element; G is not tame", r))
            h = refute_monomial(G, r, res.approx)
            ok = verify_monomial_refutation(r, res.approx, h)
            rep.add(passed("certificate_verifies", f"ratio to {res.approx} is at least {h}") if ok
                    else failed("certificate_verifies", "refutation does not re-verify", h))
        return rep
    if cmd == "decide-tame":
        S = scn.subgroups[q["subgroup"]]
        v = decide_tame(S, samples=cases, seed=seed)
        rep = Report("decide_tame", header={"subgroup": str(S)}, result={"verdict": str(v)})
        rep.add(passed("tame", f"cross-checked on {v.samples} bounded elements") if v
                else failed("tame", "bounded element without a nearest element of S", v.witness))
        return rep
    if cmd == "check-section":
        f, S = scn.morphisms[q["morphism"]], scn.subgroups[q["subgroup"]]
        v = check_cross_section(f, S)
        rep = Report("check_section", header={"morphism": str(f), "subgroup": str(S)},
                     result={"verdict": "Yes" if v else "No"})
        rep.add(passed("cross_section") if v else failed("cross_section", v.reason, v.witness))
        return rep
    if cmd == "equivalence":
        f, S = scn.morphisms[q["morphism"]], scn.subgroups[q["subgroup"]]
        return equivalence_report(f, S, seed=seed, cases=cases)
    if cmd == "complement":
        f = scn.morphisms[q["morphism"]]
        window = [_rational(e, where) for e in q["window"]] if "window" in q else None
        D = complement_of_kernel(f, window)
        rep = Report("complement", header={"morphism": str(f)},
                     result={"basis": [str(g) for g in D.basis()]})
        for c in complement_checks(f, D, window):
            rep.add(c)
        return rep
    if cmd == "valuation":
        rep = v_compat_check(scn.field, seed=seed, cases=cases)
        vals = {}
        for i, text in enumerate(q.get("series", [])):
            s = _series(scn, text, f"{where}/series/{i}")
            vals[str(s)] = str(valuation(s)) if s else "undefined"
        rep.result = {"valuations": vals}
        return rep
    if cmd == "induced-valuation":
        G = _group(scn, q["group"], where)
        return induced_valuation_check(G, scn.field, seed=seed, cases=cases)
    # residue
    a = _series(scn, q["series"], where + "/series")
    rep = Report("residue", header={"series": str(a)})
    try:
        rep.result = {"residue": str(residue(a))}
        rep.add(passed("in_valuation_ring"))
    except TamePairsError as exc:
        rep.add(failed("in_valuation_ring", str(exc), a))
    return rep


def run(scn: Scenario, seed: int = 0, cases: int = 1000, commands=None, fail_fast: bool = False):
    """Run the queries (optionally only those whose ``cmd`` is in ``commands``)."""
    reports = []
    for i, q in enumerate(scn.queries):
        if commands is not None and q["cmd"] not in commands:
            continue
        rep = run_query(scn, q, seed, cases, i)
        reports.append((q, rep))
        if fail_fast and not rep.ok:
            break
    return reports


def machine_report(scn: Scenario, reports, seed: int, cases: int) -> dict:
    ok = all(r.ok for _q, r in reports)
    out = {
        "schema_version": SCHEMA_VERSION,
        "scenario": scn.name,
        "seed": seed,
        "cases": cases,
        "ok": ok,
        "exit_code": 0 if ok else 1,
        "reports": [],
    }
    for q, r in reports:
        d = r.to_dict()
        d["query"] = q
        out["reports"].append(d)
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


__all__ = ["Scenario", "ScenarioError", "load", "load_text", "validate", "build", "run",
           "run_query", "machine_report", "dumps", "bundled_names", "resolve_path",
           "scenario_schema", "report_schema", "as_series", "rev_value"]
