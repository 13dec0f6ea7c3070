"""Check records, JSON-lines serialization and a plain text table."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from . import __version__

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class Record:
    check: str
    status: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    expected: Any = None
    got: Any = None
    ref: str = ""

    def as_dict(self, suite: str) -> Dict[str, Any]:
        return {"suite": suite, "check": self.check, "status": self.status, "inputs": self.inputs,
                "expected": self.expected, "got": self.got, "ref": self.ref}


@dataclass
class Report:
    suite: str
    records: List[Record] = field(default_factory=list)

    def add(self, check: str, ok, inputs=None, expected=None, got=None, ref: str = "") -> Record:
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        rec = Record(check, status, dict(inputs or {}), expected, got, ref)
        self.records.append(rec)
        return rec

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, INFO: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def passed(self) -> bool:
        return self.counts()[FAIL] == 0

    def failures(self) -> List[Record]:
        return [r for r in self.records if r.status == FAIL]

    def summary(self) -> Dict[str, Any]:
        c = self.counts()
        return {"suite": self.suite, "summary": True, "pass": c[PASS], "fail": c[FAIL],
                "info": c[INFO], "version": __version__}

    def to_jsonl(self) -> str:
        lines = [json.dumps(r.as_dict(self.suite), sort_keys=True, ensure_ascii=False)
                 for r in self.records]
        lines.append(json.dumps(self.summary(), sort_keys=True))
        return "\n".join(lines) + "\n"


def _cell(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    return str(v)


def format_table(reports: List[Report], verbose: bool = False) -> str:
    """Human-readable rendering; with verbose every record is listed in full."""
    out = []
    for rep in reports:
        c = rep.counts()
        out.append(f"== {rep.suite}: {c[PASS]} pass, {c[FAIL]} fail, {c[INFO]} info")
        for r in rep.records:
            if not verbose and r.status == PASS:
                continue
            out.append(f"  [{r.status}] {r.check}")
            out.append(f"      inputs:   {_cell(r.inputs)}")
            out.append(f"      expected: {_cell(r.expected)}")
            out.append(f"      got:      {_cell(r.got)}")
            if r.ref:
                out.append(f"      ref:      {r.ref}")
    return "\n".join(out)
