"""Exception hierarchy shared by all ulpa modules."""


class UlpaError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "Error"

    def payload(self) -> dict:
        """JSON-friendly description used by the CLI."""
        return {"type": self.code, "message": str(self)}


class DuplicateLabel(UlpaError):
    code = "DuplicateLabel"


class UnknownVertex(UlpaError):
    code = "UnknownVertex"


class UnknownEdge(UlpaError):
    code = "UnknownEdge"


class EmptyRange(UlpaError):
    code = "EmptyRange"


class InvalidPath(UlpaError):
    code = "InvalidPath"


class NotClosed(UlpaError):
    code = "NotClosed"


class InadmissibleWord(UlpaError):
    code = "InadmissibleWord"


class SetNotInLattice(UlpaError):
    code = "SetNotInLattice"


class ZeroElement(UlpaError):
    code = "ZeroElement"


class RingHasZeroDivisors(UlpaError):
    code = "RingHasZeroDivisors"


class InvalidSystem(UlpaError):
    code = "InvalidSystem"


class B2BViolation(UlpaError):
    code = "B2BViolation"


class ParseError(UlpaError):
    """Syntax error with source location (1-based line and column)."""

    code = "ParseError"

    def __init__(self, message: str, line: int, column: int, expected: str | None = None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = expected

    def payload(self) -> dict:
        out = {"type": self.code, "message": str(self), "line": self.line, "column": self.column}
        if self.expected:
            out["expected"] = self.expected
        return out
