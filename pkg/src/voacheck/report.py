"""Verification reports: an ordered list of checks with JSON and text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Scalar

SCHEMA = "voa-report/1"


def _plain(x):
    """Convert nested check details into JSON-compatible values."""
    if isinstance(x, Scalar):
        return x.text(compact=True)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "render"):
        return x.render()
    return str(x)


@dataclass
class Check:
    id: str
    passed: bool
    summary: str = ""
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"id": self.id, "passed": bool(self.passed), "summary": self.summary, "detail": _plain(self.detail)}


@dataclass
class Report:
    suite: str
    config: dict
    checks: list = field(default_factory=list)

    def add(self, id: str, passed: bool, summary: str = "", **detail) -> Check:
        c = Check(id, bool(passed), summary, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def get(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def select(self, prefix: str) -> list:
        return [c for c in self.checks if c.id.startswith(prefix)]

    def as_dict(self) -> dict:
        checks = sorted(self.checks, key=lambda c: c.id)
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "config": _plain(self.config),
            "passed": self.passed,
            "counts": {"total": len(checks), "failed": sum(not c.passed for c in checks)},
            "checks": [c.as_dict() for c in checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  " + " ".join(f"{k}={v}" for k, v in sorted(self.config.items()))]
        for c in sorted(self.checks, key=lambda c: c.id):
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark} {c.id}" + (f": {c.summary}" if c.summary else ""))
        failed = sum(not c.passed for c in self.checks)
        lines.append(f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"
