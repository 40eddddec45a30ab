"""Check lists produced by the verification routines.

A report is an ordered list of named checks.  Failed checks carry a witness
string naming the first counterexample in canonical element order; passing
checks may carry a short note such as a pair count.  Rendering is plain text
with no timestamps so identical inputs give identical bytes.
"""

from dataclasses import dataclass


@dataclass
class Check:
    name: str
    passed: bool
    note: str | None = None

    def line(self):
        tag = "pass" if self.passed else "FAIL"
        if self.note:
            return f"[{tag}] {self.name} -- {self.note}"
        return f"[{tag}] {self.name}"


class VerificationReport:
    def __init__(self, title):
        self.title = title
        self.checks = []

    def add(self, name, passed, note=None):
        self.checks.append(Check(name, bool(passed), note))
        return self.checks[-1]

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def lines(self, indent="  "):
        out = [f"{self.title}:"]
        out.extend(indent + c.line() for c in self.checks)
        return out

    def render(self):
        return "\n".join(self.lines())

    def to_json(self):
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "note": c.note}
                for c in self.checks
            ],
        }
