"""Run reports: a list of named checks with a status and optional witness."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .fock import Check

STATUSES = ("pass", "fail", "inconclusive", "refused")


@dataclass
class Report:
    command: str
    subject: str
    checks: list[Check] = field(default_factory=list)
    timing_ms: float = 0.0

    def add(self, name: str, status: str, witness: str | None = None) -> Check:
        if status not in STATUSES:
            raise ValueError(f"unknown status {status!r}")
        if status == "fail" and not witness:
            raise ValueError("a failing check needs a witness")
        if status == "inconclusive" and not witness:
            raise ValueError("an inconclusive check needs its caveat text")
        chk = Check(name, status, witness)
        self.checks.append(chk)
        return chk

    def extend(self, checks):
        for c in checks:
            self.add(c.name, c.status, c.witness)

    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return 1
        if "refused" in statuses:
            return 3
        return 0

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "subject": self.subject,
            "checks": [asdict(c) for c in self.checks],
            "timing_ms": round(self.timing_ms, 3),
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)

    def render(self) -> str:
        lines = [f"{self.command}  [{self.subject}]"]
        for c in self.checks:
            line = f"  [{c.status.upper():>12}] {c.name}"
            if c.witness:
                line += f"\n                 {c.witness}"
            lines.append(line)
        lines.append(f"  ({self.timing_ms:.1f} ms)")
        return "\n".join(lines)
