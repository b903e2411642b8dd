"""
Seeded block-graph generator.

The random source is SplitMix64, a public-domain 64-bit recurrence:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)

all arithmetic modulo 2**64. `below(k)` is `out % k`. Corpora are
reproducible from the seed in any language that implements the above.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from pairdom.errors import GraphError
from pairdom.graph import Graph

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound

    def between(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class GenSpec:
    seed: int
    n_blocks: int
    min_size: int = 2
    max_size: int = 4
    attach_vertex: int | None = None  # None: uniform over existing vertices
    max_vertices: int | None = None

    def __post_init__(self) -> None:
        if self.n_blocks < 1:
            raise GraphError(f"need at least one block, got {self.n_blocks}")
        if not 2 <= self.min_size <= self.max_size:
            raise GraphError(f"bad block size range {self.min_size}..{self.max_size}")
        if self.max_vertices is not None and self.max_vertices < 2:
            raise GraphError(f"max_vertices must be at least 2, got {self.max_vertices}")


def _clique_edges(members: list[int]) -> list[tuple[int, int]]:
    return list(combinations(members, 2))


def generate(spec: GenSpec) -> Graph:
    """
    Tree of cliques: one clique to start, then each new clique shares
    exactly one already placed vertex.
    """
    rng = SplitMix64(spec.seed)
    budget = spec.max_vertices

    size = rng.between(spec.min_size, spec.max_size)
    if budget is not None:
        size = min(size, budget)
    n = size
    edges = _clique_edges(list(range(size)))

    for _ in range(spec.n_blocks - 1):
        if spec.attach_vertex is not None and spec.attach_vertex < n:
            attach = spec.attach_vertex
        else:
            attach = rng.below(n)
        size = rng.between(spec.min_size, spec.max_size)
        if budget is not None:
            size = min(size, budget - n + 1)
            if size < 2:
                break
        fresh = list(range(n, n + size - 1))
        edges.extend(_clique_edges([attach, *fresh]))
        n += size - 1

    return Graph.from_edges(n, edges)


def corpus_spec(seed: int, max_n: int = 12, max_size: int = 4) -> GenSpec:
    """Per-seed GenSpec for verification corpora: vertex budget drawn in [2, max_n]."""
    budget = SplitMix64(seed ^ 0x5DEECE66D).between(2, max_n)
    return GenSpec(
        seed=seed,
        n_blocks=budget,
        min_size=2,
        max_size=max(2, max_size),
        max_vertices=budget,
    )


# named families


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, _clique_edges(list(range(n))))


def bowtie() -> Graph:
    """Triangles {0,1,2} and {2,3,4} sharing vertex 2."""
    return Graph.from_edges(5, _clique_edges([0, 1, 2]) + _clique_edges([2, 3, 4]))


def triangle_chain(k: int) -> Graph:
    """k triangles {2i, 2i+1, 2i+2} glued end to end."""
    edges: list[tuple[int, int]] = []
    for i in range(k):
        edges.extend(_clique_edges([2 * i, 2 * i + 1, 2 * i + 2]))
    return Graph.from_edges(2 * k + 1, edges)
