"""Exception types shared across the package."""


class UpsilonError(Exception):
    """Base class for all errors raised by this package."""


class KnotSyntaxError(UpsilonError):
    """A knot expression failed to parse.

    Carries the byte offset plus 1-based line/column of the offending
    position so front ends can point at the error.
    """

    def __init__(self, message: str, text: str, offset: int):
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        last_nl = text.rfind("\n", 0, offset)
        self.column = offset - last_nl
        super().__init__(f"parse error at {self.line}:{self.column} (offset {offset}): {message}")


class NotLSpaceError(UpsilonError):
    """A knot or cabling parameter set falls outside the L-space regime."""


class AssemblyError(UpsilonError):
    """Internal consistency failure: a formula-path result disagreed with
    itself (discontinuous glue) or with the semigroup-envelope path."""
