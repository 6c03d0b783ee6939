"""Structured check reports shared by validators, verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


PASS = "pass"
FAIL = "fail"
REFUSED = "refused"


@dataclass
class Check:
    name: str
    status: str
    witness: object = None
    margin: float | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.margin is not None:
            out["margin"] = repr(self.margin)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class ValidationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict | None = None

    def add(self, name: str, ok: bool, witness=None, margin=None, detail="") -> Check:
        check = Check(name, PASS if ok else FAIL, witness, margin, detail)
        self.checks.append(check)
        return check

    def refuse(self, name: str, detail: str, witness=None) -> Check:
        check = Check(name, REFUSED, witness, None, detail)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    @property
    def verdict(self) -> str:
        return PASS if self.passed else FAIL

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status != PASS]

    def to_json(self) -> dict:
        out = {
            "subject": self.subject,
            "verdict": self.verdict,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.data is not None:
            out["data"] = self.data
        return out

    def to_text(self) -> str:
        lines = [f"report: {self.subject}"]
        for c in self.checks:
            line = f"  [{c.status.upper():7s}] {c.name}"
            if c.detail:
                line += f"  ({c.detail})"
            if c.witness is not None:
                line += f"  witness={c.witness}"
            lines.append(line)
        if self.data:
            for key in sorted(self.data):
                lines.append(f"  {key}: {self.data[key]}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


class AlgebraError(ValueError):
    """Structural problem with input data (bad shape, bad permutation, ...)."""


class RefusalError(AlgebraError):
    """A stated hypothesis does not hold; the operation refuses to proceed."""

    def __init__(self, hypothesis: str, detail: str = "", witness=None):
        super().__init__(f"refused: {hypothesis}" + (f" ({detail})" if detail else ""))
        self.hypothesis = hypothesis
        self.detail = detail
        self.witness = witness


class SearchBoundExceeded(AlgebraError):
    """A configurable search bound (dimension, depth) was exceeded."""
