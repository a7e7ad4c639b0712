"""Check and report containers shared by the engines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NOT_EVALUATED = "not_evaluated"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    witness: str | None = None
    samples: int = 0
    counterexamples: int = 0
    hypotheses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "witness": self.witness,
            "samples": self.samples,
            "counterexamples": self.counterexamples,
            "hypotheses": list(self.hypotheses),
        }


def passed(name, detail="", **kw) -> Check:
    return Check(name, PASS, detail, **kw)


def failed(name, detail="", witness=None, **kw) -> Check:
    return Check(name, FAIL, detail, None if witness is None else str(witness), **kw)


def skipped(name, detail="", **kw) -> Check:
    return Check(name, NOT_EVALUATED, detail, **kw)


@dataclass
class Report:
    """A titled list of checks plus free-form header and result fields."""

    kind: str
    checks: list = field(default_factory=list)
    header: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "header": self.header,
            "result": self.result,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"== {self.kind} =="]
        for k in sorted(self.header):
            lines.append(f"  {k}: {self.header[k]}")
        for k in sorted(self.result):
            lines.append(f"  {k}: {self.result[k]}")
        for c in self.checks:
            line = f"  [{c.status.upper():>13}] {c.name}"
            if c.samples:
                line += f" ({c.samples} samples, {c.counterexamples} counterexamples)"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.witness is not None:
                lines.append(f"      witness: {c.witness}")
        lines.append(f"  overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)
