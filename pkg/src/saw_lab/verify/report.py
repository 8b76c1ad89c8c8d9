"""Data classes for verification results."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from saw_lab.mvm.audit import AuditReport


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass
class CheckResult:
    suite: str
    name: str
    status: CheckStatus
    detail: str = ""
    audit: AuditReport | None = None

    @property
    def failed(self) -> bool:
        return self.status is CheckStatus.FAIL


def check(suite: str, name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(suite, name, CheckStatus.PASS if ok else CheckStatus.FAIL, detail)


@dataclass
class VerifyReport:
    """Top-level container for a verification run."""

    suites: list[str] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def audits(self) -> list[AuditReport]:
        return [c.audit for c in self.checks if c.audit is not None]

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.failed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict[str, Any]:
        """Serialize for JSON output."""
        return {
            "passed": self.passed,
            "suites": list(self.suites),
            "checks": [
                {
                    "suite": c.suite,
                    "name": c.name,
                    "status": c.status.value,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "failed": [f"{c.suite}.{c.name}" for c in self.failures],
            "audits": [a.to_dict() for a in self.audits],
            "warnings": list(self.warnings),
        }
