from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class CheckResult(BaseModel):
    """One measured deviation against its tolerance."""

    model_config = ConfigDict(frozen=True)

    name: str
    max_error: float
    tol: float
    note: Optional[str] = None

    @computed_field
    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tol)


class VerificationReport(BaseModel):
    subject: str
    checks: List[CheckResult] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, max_error: float, tol: float, note: Optional[str] = None) -> CheckResult:
        result = CheckResult(name=name, max_error=float(max_error), tol=tol, note=note)
        self.checks.append(result)
        return result

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]
