"""Report schemas emitted by checks and CLI commands."""
from typing import Any, Optional

from pydantic import BaseModel, Field, computed_field


class CheckResult(BaseModel):
    """One named identity or property, with a witness basis element on failure."""
    name: str
    passed: bool
    witness: Optional[str] = None
    detail: Optional[str] = None


class ValidationReport(BaseModel):
    subject: str
    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Optional[str] = None, detail: Optional[str] = None) -> "ValidationReport":
        self.checks.append(CheckResult(name=name, passed=passed, witness=witness, detail=detail))
        return self

    def extend(self, other: "ValidationReport", prefix: Optional[str] = None) -> "ValidationReport":
        for c in other.checks:
            name = f"{prefix}.{c.name}" if prefix else c.name
            self.checks.append(c.model_copy(update={"name": name}))
        return self

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)


class CommandReport(BaseModel):
    """Deterministic output of a CLI command."""
    command: str
    subject: str
    ok: bool = True
    error: Optional[str] = None
    witness: Optional[str] = None
    data: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckResult] = Field(default_factory=list)
