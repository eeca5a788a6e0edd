"""Small verdict container used by the structure checkers.

Checkers never raise on mathematical failure; they record every clause with
a witness so callers (and the CLI) can report findings precisely.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Clause:
    name: str
    ok: bool
    witness: str | None = None

    def to_dict(self):
        d = {"name": self.name, "ok": self.ok}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Verdict:
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: str | None = None) -> bool:
        self.checks.append(Clause(name, bool(ok), None if ok else witness))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def to_dict(self):
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}

    def summary(self) -> str:
        if self.ok:
            return f"pass ({len(self.checks)} clauses)"
        bad = "; ".join(
            c.name + (f" [{c.witness}]" if c.witness else "") for c in self.failures()
        )
        return f"FAIL: {bad}"
