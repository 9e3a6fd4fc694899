"""Structured pass/fail reports with a stable JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = "lajet.report/1"


@dataclass
class Check:
    name: str
    status: bool
    certified_order: int | None = None
    witness: Any = None
    detail: Any = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.status else "fail"}
        if self.certified_order is not None:
            out["certified_order"] = self.certified_order
        if self.detail is not None:
            out["detail"] = self.detail
        if not self.status and self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    sections: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def add(self, name: str, status: bool, certified_order: int | None = None,
            witness: Any = None, detail: Any = None) -> Check:
        chk = Check(name, bool(status), certified_order, witness, detail)
        self.checks.append(chk)
        return chk

    def extend(self, sub: "Report") -> None:
        self.sections.append(sub)

    @property
    def passed(self) -> bool:
        return all(c.status for c in self.checks) and all(s.passed for s in self.sections)

    def failures(self) -> list:
        out = [(self.title, c) for c in self.checks if not c.status]
        for s in self.sections:
            out.extend(s.failures())
        return out

    def to_dict(self) -> dict:
        out = {"title": self.title, "status": "pass" if self.passed else "fail"}
        if self.meta:
            out["meta"] = self.meta
        out["checks"] = [c.to_dict() for c in self.checks]
        if self.data:
            out["data"] = self.data
        if self.sections:
            out["sections"] = [s.to_dict() for s in self.sections]
        return out

    def to_json(self) -> str:
        payload = {"schema": SCHEMA, "report": self.to_dict()}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def summary_lines(self, indent: int = 0) -> list:
        pad = "  " * indent
        lines = [f"{pad}{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            order = f" (order {c.certified_order})" if c.certified_order is not None else ""
            lines.append(f"{pad}  [{'ok' if c.status else 'FAIL'}] {c.name}{order}")
        for s in self.sections:
            lines.extend(s.summary_lines(indent + 1))
        return lines
