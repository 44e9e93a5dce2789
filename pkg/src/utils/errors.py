from typing import Iterable, Optional


class PFHKitError(Exception):
    """Base class of every error raised by the package; carries the CLI exit code."""

    exit_code: int = 1


class DomainError(PFHKitError, ValueError):
    exit_code = 1


class RegimeError(DomainError):
    pass


class EnumerationCapError(DomainError):
    pass


class SingularLocusError(DomainError):
    pass


class OrbitParseError(PFHKitError):
    exit_code = 2

    def __init__(self, message: str, text: str, position: int, expected: Optional[Iterable[str]] = None):
        self.text = text
        self.position = position
        self.expected = tuple(sorted(set(expected or ())))
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class VerificationError(PFHKitError):
    exit_code = 3


class ConsistencyError(VerificationError):
    pass
