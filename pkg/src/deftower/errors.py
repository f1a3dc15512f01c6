"""Exception hierarchy shared by all deftower modules."""


class DeftowerError(Exception):
    """Base class for every error raised by the toolkit."""


# ---------------------------------------------------------------- polycore

class MismatchedVarTable(DeftowerError):
    """Two polynomials over different variable tables were combined."""


class NotDivisible(DeftowerError):
    """An exact polynomial division has a nonzero remainder."""


class NotAPower(DeftowerError):
    """The requested m-th root does not exist (or is not squarefree)."""


class MissingWeights(DeftowerError):
    """A weighted-degree query was made on a table without weights."""


# ---------------------------------------------------------------- polyparse

class ParseError(DeftowerError):
    """Syntax error in polynomial or file text, with 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        self.bare_message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class UnknownVariable(ParseError):
    """An identifier that is not declared in the variable table."""

    def __init__(self, name: str, line: int, column: int):
        self.name = name
        super().__init__(f"unknown variable '{name}'", line, column)


class StructureError(DeftowerError):
    """A tower/family/branch file is structurally malformed."""


# ---------------------------------------------------------------- algorithms

class MalformedTower(DeftowerError):
    """A covering tower violates its invariants where they are required."""


class MalformedFamily(DeftowerError):
    """A family equation cannot be put in the required shape."""


class UnsupportedShape(DeftowerError):
    """Input falls outside the supported coordinate conventions."""


class NotSigmaAdic(DeftowerError):
    """The family equation has no base-adic expansion of the stated order."""


class DivisibilityViolation(DeftowerError):
    """A required power of t does not divide where the theory demands it."""


class DepthExceeded(DeftowerError):
    """The resolution loop exceeded the configured depth bound."""

    def __init__(self, max_depth: int):
        self.max_depth = max_depth
        super().__init__(f"resolution exceeded max depth {max_depth}")


class TruncationTooShort(DeftowerError):
    """Branch germs are truncated too early to certify separation."""
