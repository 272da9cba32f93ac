"""Exception hierarchy shared by the library and the command line."""
from __future__ import annotations


class UsfLabError(Exception):
    """Base class for every error raised by usf_lab."""


class HypergraphError(UsfLabError, ValueError):
    """A hypergraph with boundary violates one of its structural invariants."""


class EmptyBoundary(HypergraphError):
    pass


class DanglingIncidence(HypergraphError):
    pass


class EdgeWithNoVertex(HypergraphError):
    pass


class DuplicateId(HypergraphError):
    pass


class OrphanEdge(HypergraphError):
    pass


class BoundaryCollision(HypergraphError):
    pass


class NotAGraph(HypergraphError):
    pass


class NotAForest(HypergraphError):
    pass


class BadDimension(UsfLabError, ValueError):
    pass


class MissingCap(UsfLabError):
    """The ubiquity verdict depends on an unknown R_G value; supply an edge-degree cap."""


class TooLarge(UsfLabError, ValueError):
    """An exact enumeration would exceed the configured size guard."""


class InconclusiveAtCap(UsfLabError):
    """No radius up to the scan cap produced a hit."""


class ParseError(UsfLabError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
