"""Exception hierarchy shared by the fourcolor modules."""

from __future__ import annotations


class FourColorError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FourColorError, ValueError):
    """An argument lies outside an operation's domain (unknown vertex, bad color, ...)."""


class ConsistencyError(FourColorError):
    """Mutation request that contradicts the current state (stale step, stale component)."""


class StructureError(FourColorError):
    """Malformed rotation system: asymmetric adjacency, loops, duplicated neighbors."""


class NonPlanarEvidence(FourColorError):
    """The input cannot be planar.

    Raised when no vertex of degree <= 5 exists or when a small base graph has
    no proper 4-coloring.
    """


class GraphSyntaxError(FourColorError, ValueError):
    """Parse error in a graph or outcome file, with 1-based line/column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmbeddingError(DomainError):
    """The rotation system does not describe a plane embedding (Euler check failed)."""


class AsymmetryError(StructureError):
    def __init__(self, u: int, v: int, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}asymmetric adjacency: {u} lists {v} but {v} does not list {u}")
        self.u, self.v, self.line = u, v, line


class DuplicateNeighborError(StructureError):
    def __init__(self, v: int, u: int, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}vertex {v} lists neighbor {u} more than once")
        self.v, self.u, self.line = v, u, line
