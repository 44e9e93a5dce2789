from abc import ABC, abstractmethod
from typing import List, TypedDict

from pydantic import BaseModel, Field, computed_field

from src.utils.errors import PFHKitError
from src.utils.logging import get_logger
from src.validator.data_model import SelfCheckRanges

# failure messages kept per check; the counters stay exact
MAX_REPORTED_FAILURES = 20


class CheckState(TypedDict):
    passed: int
    skipped: int
    failed: int


class CheckSummary(BaseModel):
    name: str
    passed: int
    skipped: int
    failed: int
    failures: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def ok(self) -> bool:
        return self.failed == 0


class BaseCheck(ABC):
    """One family of invariants, evaluated over the configured ranges."""

    name: str = "base"

    def __init__(self, ranges: SelfCheckRanges):
        self.ranges = ranges
        self.logger = get_logger(__name__)
        self.reset()

    def reset(self) -> None:
        self.state: CheckState = {
            "passed": 0,
            "skipped": 0,
            "failed": 0,
        }
        self.failures: List[str] = []

    @abstractmethod
    def run(self) -> None:
        pass

    def expect(self, condition: bool, message: str) -> bool:
        if condition:
            self.state["passed"] += 1
        else:
            self.fail(message)
        return bool(condition)

    def fail(self, message: str) -> None:
        self.state["failed"] += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(message)
        self.logger.error(f"[{self.name}] {message}")

    def skip(self, reason: str) -> None:
        self.state["skipped"] += 1
        self.logger.debug(f"[{self.name}] skipped: {reason}")

    def guarded(self, label: str, func, *args, **kwargs):
        """Call func, turning a package error into a recorded failure."""
        try:
            return func(*args, **kwargs)
        except PFHKitError as e:
            self.fail(f"{label}: {e}")
            return None

    def summary(self) -> CheckSummary:
        return CheckSummary(name=self.name, failures=list(self.failures), **self.state)
