"""Per-check records and their text / JSON renderings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

__all__ = ["CheckRecord", "Report"]


@dataclass(frozen=True)
class CheckRecord:
    check: str
    anchor: str
    defect: float
    tol: float
    passed: bool
    kind: str
    window: dict
    runtime_ms: float
    error: str | None = None

    def as_dict(self) -> dict:
        out = {
            "check": self.check,
            "anchor": self.anchor,
            "defect": self.defect if math.isfinite(self.defect) else None,
            "tol": self.tol,
            "pass": self.passed,
            "kind": self.kind,
            "window": self.window,
            "runtime_ms": round(self.runtime_ms, 3),
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class Report:
    seed: int
    records: list[CheckRecord] = field(default_factory=list)
    scenario: dict = field(default_factory=dict)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, check_id: str) -> CheckRecord:
        for r in self.records:
            if r.check == check_id:
                return r
        raise KeyError(check_id)

    def summary(self) -> dict:
        return {"pass": self.passed, "fail": self.failed, "seed": self.seed}

    def to_json(self, indent: int | None = 2) -> str:
        body = {
            "scenario": self.scenario,
            "checks": [r.as_dict() for r in self.records],
            "summary": self.summary(),
        }
        return json.dumps(body, indent=indent)

    def to_text(self) -> str:
        lines = []
        width = max((len(r.check) for r in self.records), default=10)
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            rel = ">=" if r.kind == "lower" else "<"
            defect = f"{r.defect:.3e}" if math.isfinite(r.defect) else "    inf  "
            line = f"{status}  {r.check:<{width}}  defect {defect} {rel} {r.tol:.1e}  ({r.runtime_ms:.1f} ms)"
            if r.error:
                line += f"  error: {r.error}"
            lines.append(line)
        s = self.summary()
        lines.append(f"summary: {s['pass']} passed, {s['fail']} failed (seed {s['seed']})")
        return "\n".join(lines)
