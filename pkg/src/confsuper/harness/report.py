"""Verification records and their JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    DOCUMENTED = "discrepancy-documented"
    SKIPPED = "skipped"

    @property
    def ok(self) -> bool:
        return self is not Verdict.FAIL


@dataclass(frozen=True)
class Outcome:
    verdict: Verdict
    residual: str | None = None
    note: str | None = None


@dataclass(frozen=True)
class CheckRecord:
    name: str
    anchor: str
    verdict: Verdict
    elapsed_ms: int
    residual: str | None = None
    note: str | None = None

    def as_json(self) -> dict:
        d = {"name": self.name, "anchor": self.anchor, "verdict": self.verdict.value, "elapsed_ms": self.elapsed_ms}
        if self.residual is not None:
            d["residual"] = self.residual
        return d


@dataclass
class VerificationReport:
    suite: str
    seed: int
    checks: list[CheckRecord] = field(default_factory=list)

    def sorted(self) -> "VerificationReport":
        return VerificationReport(self.suite, self.seed, sorted(self.checks, key=lambda c: c.name))

    @property
    def ok(self) -> bool:
        return all(c.verdict.ok for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def counts(self) -> dict:
        out = {v.value: 0 for v in Verdict}
        for c in self.checks:
            out[c.verdict.value] += 1
        return out

    def to_json(self) -> str:
        body = {"suite": self.suite, "seed": self.seed, "checks": [c.as_json() for c in self.sorted().checks]}
        return json.dumps(body, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.sorted().checks:
            lines.append(f"  {c.verdict.value.upper():<22} {c.name:<{width}}  [{c.anchor}]  {c.elapsed_ms} ms")
            if c.note:
                lines.append(f"      note: {c.note}")
            if c.residual is not None:
                res = c.residual if len(c.residual) <= 160 else c.residual[:157] + "..."
                lines.append(f"      residual: {res}")
        counts = ", ".join(f"{k} {v}" for k, v in self.counts().items() if v)
        lines.append(f"  {len(self.checks)} checks: {counts or 'none'}")
        return "\n".join(lines) + "\n"
