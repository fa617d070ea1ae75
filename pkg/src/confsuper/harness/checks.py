"""Check declarations and small helpers that turn exact residuals into outcomes."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable

from .report import CheckRecord, Outcome, Verdict


def is_zero(value) -> bool:
    z = getattr(value, "is_zero", None)
    if z is not None:
        return z() if callable(z) else bool(z)
    return not value


def render(value) -> str:
    return str(value)


def exact(residuals) -> Outcome:
    """Pass iff every residual is zero; the first nonzero one is reported.

    ``residuals`` is a mapping or an iterable of (label, value) pairs.
    """
    items = residuals.items() if hasattr(residuals, "items") else residuals
    for label, value in items:
        if not is_zero(value):
            return Outcome(Verdict.FAIL, f"{label}: {render(value)}")
    return Outcome(Verdict.PASS)


def holds(condition: bool, residual: str | None = None) -> Outcome:
    return Outcome(Verdict.PASS) if condition else Outcome(Verdict.FAIL, residual)


def documented(printed: Outcome, derived: Outcome, note: str) -> Outcome:
    """For open questions: the printed form may fail if the derived form holds."""
    if printed.verdict is Verdict.PASS:
        return printed
    if derived.verdict is Verdict.PASS:
        return Outcome(Verdict.DOCUMENTED, printed.residual, note)
    return Outcome(Verdict.FAIL, derived.residual, note)


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[int], Outcome]

    def execute(self, seed: int) -> CheckRecord:
        start = time.perf_counter()
        try:
            out = self.run(seed)
        except Exception as exc:  # a crash inside a check is a failing verdict, not a harness error
            out = Outcome(Verdict.FAIL, f"{type(exc).__name__}: {exc}")
        ms = int(round((time.perf_counter() - start) * 1000))
        return CheckRecord(self.name, self.anchor, out.verdict, ms, out.residual, out.note)


def run_checks(checks: Iterable[Check], seed: int, stable: bool = False) -> list[CheckRecord]:
    out = []
    for c in sorted(checks, key=lambda c: c.name):
        rec = c.execute(seed)
        if stable:
            rec = CheckRecord(rec.name, rec.anchor, rec.verdict, 0, rec.residual, rec.note)
        out.append(rec)
    return out
