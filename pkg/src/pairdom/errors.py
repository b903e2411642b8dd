from __future__ import annotations


class PairdomError(RuntimeError):
    """Base error for pairdom."""


class GraphError(PairdomError):
    """Input graph is malformed or outside the supported class."""


class ParseError(GraphError):
    """Edge-list document could not be parsed."""

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DisconnectedError(GraphError):
    """Graph is not connected."""


class NotABlockGraph(GraphError):
    """Some block is not complete, or a vertex is isolated."""

    def __init__(self, block: int | None, reason: str) -> None:
        where = "graph" if block is None else f"block {block}"
        super().__init__(f"{where}: {reason}")
        self.block = block
        self.reason = reason


class NotACutVertex(GraphError):
    """Vertex is not an articulation point."""

    def __init__(self, vertex: int) -> None:
        super().__init__(f"vertex {vertex} is not a cut vertex")
        self.vertex = vertex


class InvalidVertex(GraphError):
    """Vertex id out of range."""

    def __init__(self, vertex: int, n: int) -> None:
        super().__init__(f"vertex {vertex} out of range 0..{n - 1}")
        self.vertex = vertex


class TooLarge(PairdomError):
    """Graph exceeds the exhaustive oracle's vertex cap."""


class NoUnmatched(PairdomError):
    """Every component has a perfect matching."""


class InternalInvariant(PairdomError):
    """A pruning or ordering invariant failed (a correctness finding)."""


class ConfigError(PairdomError):
    """Environment configuration is malformed."""
