"""Verification reports shared by every suite and the command line."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "status", "checks", "ms"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "status": {"enum": ["pass", "fail"]},
        "ms": {"type": "integer", "minimum": 0},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "anchor", "status", "witness"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "anchor": {"type": "string"},
                    "status": {"enum": ["pass", "fail"]},
                    "witness": {"type": ["string", "null"]},
                },
            },
        },
    },
}


@dataclass
class Check:
    id: str
    description: str
    anchor: str
    passed: bool
    witness: str | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "witness": self.witness}


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def add(self, id: str, description: str, anchor: str, passed: bool, witness=None) -> Check:
        check = Check(id, description, anchor, bool(passed), None if witness is None else str(witness))
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        self.ms += other.ms

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
            "ms": int(self.ms),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_text(self) -> str:
        lines = [f"[{self.suite}] {self.status.upper()}  ({len(self.checks)} checks, {self.ms} ms)"]
        for c in self.checks:
            line = f"  {c.status.upper():4}  {c.id}: {c.description}"
            if c.witness is not None:
                line += f"  [witness: {c.witness}]"
            lines.append(line)
        return "\n".join(lines)


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.ms += int(round((time.perf_counter() - t0) * 1000))
