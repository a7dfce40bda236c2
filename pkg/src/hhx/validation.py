"""Validation reports: axiom checkers report failures, they do not raise."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    """One axiom check: name, verdict, and the first violating location."""

    name: str
    passed: bool
    location: tuple | None = None
    message: str | None = None

    def describe(self) -> str:
        if self.passed:
            return f"{self.name}: ok"
        where = f" at {self.location}" if self.location is not None else ""
        why = f" ({self.message})" if self.message else ""
        return f"{self.name}: FAIL{where}{why}"


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, location=None, message=None):
        self.checks.append(Check(name, passed, location, message))

    def check_named(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def describe(self) -> str:
        return "; ".join(c.describe() for c in self.checks)
