"""Exception hierarchy shared by every module.

The CLI maps :class:`DomainError` subclasses to exit code 1; anything
raised during argument parsing maps to exit code 2.
"""


class DomainError(Exception):
    """Base class for failures that stem from the inputs, not from usage."""


class GraphError(DomainError):
    pass


class CorpusParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class LabellingError(DomainError):
    pass


class MatrixError(DomainError):
    pass


class GroupError(DomainError):
    pass


class GrowthError(DomainError):
    pass


class DirectedError(DomainError):
    pass


class SizeBoundError(DomainError):
    """An exhaustive routine was asked to work beyond its configured cap."""
