"""Check results and suite reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    seconds: float | None = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self, timing: bool = False) -> dict:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if not self.passed and self.witness is not None:
            out["witness"] = self.witness
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def add(self, name: str, passed: bool, witness=None, seconds=None) -> Check:
        chk = Check(name, bool(passed), witness, seconds)
        self.checks.append(chk)
        return chk

    def extend(self, checks):
        self.checks.extend(checks)

    def to_json(self, timing: bool = False) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_json(timing) for c in self.checks],
        }

    def render_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True) + "\n"

    def render_text(self, witness_files: dict[str, str] | None = None, timing: bool = False) -> str:
        lines = [f"SUITE {self.suite} " + " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))]
        for c in self.checks:
            line = f"CHECK {c.name} {c.status}"
            if not c.passed and witness_files and c.name in witness_files:
                line += f" {witness_files[c.name]}"
            if timing and c.seconds is not None:
                line += f" ({c.seconds:.3f}s)"
            lines.append(line)
        lines.append(f"RESULT {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"
