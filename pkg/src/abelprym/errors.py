"""Exception hierarchy.

``InputError`` subclasses describe bad user input (CLI exit code 2);
``InvariantViolation`` subclasses signal an internal inconsistency (exit code 1).
"""


class InputError(ValueError):
    pass


class InvariantViolation(AssertionError):
    pass


class AmbientMismatch(InputError):
    pass


class GroupBoundExceeded(InputError):
    pass


class DatumError(InputError):
    pass


class ZeroColumn(DatumError):
    def __init__(self, j):
        super().__init__(f"column {j} is zero (z_{j} is not a branch point)")
        self.j = j


class ColumnSumNonzero(DatumError):
    def __init__(self, total):
        super().__init__(f"columns sum to {total}, expected zero (cover ramified at infinity)")
        self.total = total


class TooFewPoints(DatumError):
    def __init__(self, s):
        super().__init__(f"need at least 3 branch points, got {s}")
        self.s = s


class NotASubgroup(DatumError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CharactersDoNotCancel(InputError):
    pass


class DuplicateBranchPoints(InputError):
    pass


class InconsistentGenus(InvariantViolation):
    pass
