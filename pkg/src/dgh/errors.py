"""Exception types raised across the package."""

from __future__ import annotations


class DigraphError(Exception):
    """Base class for every error raised by dgh."""


class SelfLoop(DigraphError):
    def __init__(self, vertex, line=None):
        self.vertex = vertex
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"self-loop at {vertex!r}{where}")


class UnknownVertex(DigraphError):
    pass


class MapViolation(DigraphError):
    """An arrow whose image is neither an arrow nor a single vertex."""

    def __init__(self, arrow, reason="image is not an arrow or a point", axis=None):
        self.arrow = arrow
        self.axis = axis
        self.reason = reason
        extra = f" along axis {axis}" if axis is not None else ""
        super().__init__(f"map violation at {arrow!r}{extra}: {reason}")


class MissingVertex(DigraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"assignment is undefined on {vertex!r}")


class BasepointDropped(DigraphError):
    pass


class DomainMismatch(DigraphError):
    pass


class EndpointMismatch(DigraphError):
    pass


class ParityViolation(DigraphError):
    pass


class BoundaryViolation(DigraphError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"boundary value at {index!r} is not the basepoint")


class DimensionMismatch(DigraphError):
    pass


class TruncationTooSmall(DigraphError):
    def __init__(self, missing, message=None):
        self.missing = missing
        super().__init__(message or f"class {missing!r} lies outside the truncation window")


class IrreconcilableRepresentatives(DigraphError):
    pass


class SizeOverflow(DigraphError):
    pass


class TruncationMismatch(DigraphError):
    pass


class ParseError(DigraphError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
