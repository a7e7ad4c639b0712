"""Command-line workbench: ``tamepairs <command> SCENARIO [flags]``.

Exit codes: 0 when every check passes, 1 when some property or
equivalence check fails (the witnesses are in the report), 2 for input,
schema or name-resolution errors.
"""

from __future__ import annotations

import argparse
import copy
import sys

from . import __version__
from .proptest import SUITES, run_suite
from .scenario import (
    ScenarioError,
    build,
    bundled_names,
    dumps,
    load,
    machine_report,
    run,
    validate,
    SCHEMA_VERSION,
)

# subcommand -> query commands it runs from a scenario
COMMANDS = {
    "run": None,
    "st": ("st", "st-positive"),
    "decide-tame": ("decide-tame",),
    "check-section": ("check-section",),
    "complement": ("complement",),
    "equivalence": ("equivalence",),
    "valuation": ("valuation", "induced-valuation"),
    "residue": ("residue",),
}

HELP = {
    "run": "run every query of a scenario",
    "st": "standard parts (st and st-positive queries)",
    "decide-tame": "decide tameness of subgroups",
    "check-section": "check cross-section subgroups",
    "complement": "complements of kernels",
    "equivalence": "full equivalence reports",
    "valuation": "valuation checks (valuation and induced-valuation queries)",
    "residue": "residue maps of series",
}


def _common(p: argparse.ArgumentParser, cases: int):
    p.add_argument("--seed", type=int, default=0, help="harness seed (default 0)")
    p.add_argument("--cases", type=int, default=cases, help=f"sampled cases per check (default {cases})")
    p.add_argument("--out", metavar="PATH", help="also write the machine-readable report here")
    p.add_argument("--format", choices=("text", "machine"), default="text", help="stdout format")
    p.add_argument("--fail-fast", action="store_true", help="stop at the first failing report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tamepairs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in HELP.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("scenario", help="scenario file, or the name of a bundled scenario")
        _common(p, 1000)
        if name == "run":
            continue
        # ad hoc query: replaces the scenario's own queries
        adhoc = p.add_argument_group("ad hoc query (overrides the scenario's queries)")
        if name in ("st", "decide-tame", "check-section", "equivalence"):
            adhoc.add_argument("--subgroup", help="subgroup name")
        if name in ("check-section", "complement", "equivalence"):
            adhoc.add_argument("--morphism", help="morphism name")
        if name == "st":
            adhoc.add_argument("--element", help="element in the textual syntax")
        if name in ("st", "valuation"):
            adhoc.add_argument("--group", help="monomial group name")
        if name in ("st", "residue"):
            adhoc.add_argument("--series", help="series in the textual syntax")
        if name == "valuation":
            adhoc.add_argument("--series", action="append", help="series to evaluate (repeatable)")
        if name == "complement":
            adhoc.add_argument("--window", help="comma-separated exponents (Hahn ambients)")
    p = sub.add_parser("proptest", help="run the built-in property suites with shrinking")
    p.add_argument("--suite", choices=SUITES, default="all")
    _common(p, 200)
    sub.add_parser("scenarios", help="list the bundled scenarios")
    return parser


def _adhoc_query(args) -> dict | None:
    g = lambda k: getattr(args, k, None)  # noqa: E731
    c = args.command
    if c == "st":
        if g("group") or g("series"):
            return {"cmd": "st-positive", "group": g("group"), "series": g("series")}
        if g("subgroup") or g("element"):
            return {"cmd": "st", "subgroup": g("subgroup"), "element": g("element")}
        return None
    if c == "decide-tame":
        return {"cmd": c, "subgroup": g("subgroup")} if g("subgroup") else None
    if c in ("check-section", "equivalence"):
        if g("subgroup") or g("morphism"):
            return {"cmd": c, "morphism": g("morphism"), "subgroup": g("subgroup")}
        return None
    if c == "complement":
        if not (g("morphism") or g("window")):
            return None
        q = {"cmd": c, "morphism": g("morphism")}
        if g("window"):
            q["window"] = [w.strip() for w in g("window").split(",")]
        return q
    if c == "valuation":
        if g("group"):
            return {"cmd": "induced-valuation", "group": g("group")}
        return {"cmd": "valuation", "series": g("series")} if g("series") else None
    if c == "residue":
        return {"cmd": c, "series": g("series")} if g("series") else None
    return None


def _emit(args, doc: dict, texts: list) -> int:
    out = dumps(doc)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(out)
        except OSError as exc:
            raise ScenarioError(f"cannot write {args.out}: {exc}") from None
    if args.format == "machine":
        sys.stdout.write(out)
    else:
        sys.stdout.write("\n\n".join(texts) + "\n")
        sys.stdout.write(f"\n{doc['scenario']}: {'PASS' if doc['ok'] else 'FAIL'}\n")
    return doc["exit_code"]


def _run_scenario(args) -> int:
    doc = load(args.scenario)
    q = _adhoc_query(args)
    if q is not None:
        missing = [k for k, v in q.items() if v is None]
        if missing:
            raise ScenarioError(f"ad hoc {q['cmd']} query needs --{' --'.join(missing)}")
        doc = copy.deepcopy(doc)
        doc["queries"] = [q]
        validate(doc, args.scenario)
    scn = build(doc, doc.get("name", args.scenario))
    commands = COMMANDS[args.command] if q is None else None
    reports = run(scn, args.seed, args.cases, commands, args.fail_fast)
    if not reports:
        raise ScenarioError(f"{scn.name}: no {args.command} queries in this scenario")
    mdoc = machine_report(scn, reports, args.seed, args.cases)
    return _emit(args, mdoc, [r.to_text() for _q, r in reports])


def _proptest(args) -> int:
    if args.cases < 1:
        raise ScenarioError("--cases must be positive")
    rep = run_suite(args.suite, args.seed, args.cases, args.fail_fast)
    d = rep.to_dict()
    d["query"] = {"cmd": "proptest", "label": args.suite}
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": f"proptest:{args.suite}",
        "seed": args.seed,
        "cases": args.cases,
        "ok": rep.ok,
        "exit_code": 0 if rep.ok else 1,
        "reports": [d],
    }
    return _emit(args, doc, [rep.to_text()])


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "scenarios":
        for name in bundled_names():
            print(name)
        return 0
    try:
        if getattr(args, "cases", 1) < 0:
            raise ScenarioError("--cases must be non-negative")
        if args.command == "proptest":
            return _proptest(args)
        return _run_scenario(args)
    except ScenarioError as exc:
        print(f"tamepairs: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
