"""Per-case records for the property suites, with text and JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Case:
    law: str
    seed: int
    verdict: str  # "pass", "fail", "error" or "skip"
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


@dataclass
class Report:
    suite: str
    cases: list = field(default_factory=list)

    def add(self, law, seed, ok, note=""):
        self.cases.append(Case(law, seed, "pass" if ok else "fail", note))

    def error(self, law, seed, exc):
        self.cases.append(Case(law, seed, "error", f"{type(exc).__name__}: {exc}"))

    def skip(self, law, seed, reason):
        """No instance exists within the generator's bounds; neither pass nor fail."""
        self.cases.append(Case(law, seed, "skip", str(reason)))

    @property
    def failures(self) -> list:
        return [c for c in self.cases if c.verdict in ("fail", "error")]

    @property
    def skipped(self) -> list:
        return [c for c in self.cases if c.verdict == "skip"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        """law -> (passed, checked), laws in first-seen order; skipped cases are not counted."""
        out = {}
        for c in self.cases:
            p, n = out.get(c.law, (0, 0))
            out[c.law] = (p + c.ok, n + (c.verdict != "skip"))
        return out

    def lines(self) -> list:
        head = "PASS" if self.ok else "FAIL"
        total = len(self.cases) - len(self.skipped)
        skipped = f" ({len(self.skipped)} skipped)" if self.skipped else ""
        out = [f"{self.suite}: {head} {total - len(self.failures)}/{total}{skipped}"]
        for law, (p, n) in self.counts().items():
            out.append(f"  {law}: {p}/{n}")
        for c in self.failures:
            note = f" ({c.note})" if c.note else ""
            out.append(f"  failing {c.law} seed={c.seed} {c.verdict}{note}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def records(self) -> list:
        return [{"law": c.law, "seed": c.seed, "verdict": c.verdict, **({"note": c.note} if c.note else {})}
                for c in self.cases]

    def to_json(self) -> str:
        return json.dumps({"suite": self.suite, "ok": self.ok, "cases": self.records()},
                          indent=2, sort_keys=True)
