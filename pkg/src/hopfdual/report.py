"""Pass/fail/indeterminate check results shared by the checkers and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INDETERMINATE = "indeterminate"

__all__ = ["PASS", "FAIL", "INDETERMINATE", "Check", "Report"]


@dataclass
class Check:
    name: str
    status: str
    witness: object = None
    detail: str = ""

    def machine_line(self):
        parts = ["CHECK", self.name, self.status]
        if self.witness is not None:
            parts.append(_fmt_witness(self.witness))
        if self.status == INDETERMINATE and self.detail:
            parts.append(self.detail.replace(" ", "_"))
        return " ".join(parts)

    def text_line(self):
        out = f"{self.name:<28} {self.status}"
        if self.witness is not None:
            out += f"  witness={_fmt_witness(self.witness)}"
        if self.detail:
            out += f"  ({self.detail})"
        return out


def _fmt_witness(w):
    if isinstance(w, tuple):
        return "(" + ",".join(_fmt_witness(x) for x in w) + ")"
    return str(w).replace(" ", "")


@dataclass
class Report:
    title: str = ""
    checks: list = field(default_factory=list)

    def add(self, name, status, witness=None, detail=""):
        self.checks.append(Check(name, status, witness, detail))
        return self.checks[-1]

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.detail))

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def status(self, name):
        return self[name].status

    @property
    def failed(self):
        return [c for c in self.checks if c.status == FAIL]

    @property
    def indeterminate(self):
        return [c for c in self.checks if c.status == INDETERMINATE]

    @property
    def ok(self):
        """No check failed (indeterminate checks do not count as failures)."""
        return not self.failed

    @property
    def all_pass(self):
        return all(c.status == PASS for c in self.checks)

    def verdict(self):
        if self.failed:
            return FAIL
        if self.indeterminate:
            return INDETERMINATE
        return PASS

    def lines(self, fmt="text"):
        if fmt == "machine":
            return [c.machine_line() for c in self.checks]
        head = [self.title] if self.title else []
        return head + ["  " + c.text_line() for c in self.checks]
