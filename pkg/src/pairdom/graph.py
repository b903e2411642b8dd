from __future__ import annotations

import re
from bisect import bisect_left
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from pairdom.errors import DisconnectedError, GraphError, NotABlockGraph, ParseError

_NUMBER = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertex ids 0..n-1."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]  # sorted neighbor ids
    m: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 1:
            raise GraphError(f"vertex count must be positive, got {n}")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        return cls(n=n, adjacency=tuple(tuple(sorted(a)) for a in adj), m=len(seen))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        adj = self.adjacency[u]
        i = bisect_left(adj, v)
        return i < len(adj) and adj[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if u < v:
                    yield u, v

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """
        Induced subgraph, relabelled densely in ascending id order.
        Returns the graph and the new-id -> old-id mapping.
        """
        kept = tuple(sorted(set(vertices)))
        index = {old: new for new, old in enumerate(kept)}
        adj = tuple(
            tuple(index[w] for w in self.adjacency[old] if w in index) for old in kept
        )
        m = sum(len(a) for a in adj) // 2
        return Graph(n=len(kept), adjacency=adj, m=m), kept


@dataclass(frozen=True)
class BlockCutStructure:
    blocks: tuple[frozenset[int], ...]
    block_edges: tuple[int, ...]
    cut_vertices: frozenset[int]
    blocks_of: tuple[tuple[int, ...], ...]

    def is_cut_vertex(self, v: int) -> bool:
        return v in self.cut_vertices

    def cut_count(self, b: int) -> int:
        return sum(1 for v in self.blocks[b] if v in self.cut_vertices)


@dataclass(frozen=True)
class BlockGraphReport:
    n: int
    m: int
    blocks: int
    cut_vertices: int


def parse_graph(text: str) -> Graph:
    """
    Parse the edge-list format: `#` comment lines, a `n m` header,
    then m lines `u v` with 0 <= u, v < n.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {len(parts)} fields")
        if not all(_NUMBER.fullmatch(p) for p in parts):
            raise ParseError(lineno, f"not an integer pair: {line!r}")
        a, b = int(parts[0]), int(parts[1])

        if header is None:
            if a < 1 or b < 0:
                raise ParseError(lineno, f"bad header n={a} m={b}")
            header = (a, b)
            continue

        n, m = header
        if len(edges) == m:
            raise ParseError(lineno, f"more than the declared {m} edges")
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(lineno, f"vertex out of range 0..{n - 1}")
        if a == b:
            raise ParseError(lineno, f"self-loop at vertex {a}")
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append((a, b))

    if header is None:
        raise ParseError(last_line, "missing `n m` header")
    if len(edges) != header[1]:
        raise ParseError(last_line, f"declared {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines: list[str] = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def decompose(g: Graph) -> BlockCutStructure:
    """
    Blocks and cut vertices by one iterative depth-first traversal
    (Hopcroft-Tarjan low points with an edge stack). Block ids follow
    the order in which blocks are closed.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[int]] = []
    block_edges: list[int] = []
    edge_stack: list[tuple[int, int]] = []

    disc[0] = 0
    clock = 1
    # (vertex, parent, neighbor iterator)
    stack: list[tuple[int, int, Iterator[int]]] = [(0, -1, iter(g.adjacency[0]))]

    while stack:
        v, parent, it = stack[-1]
        descended = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = clock
                clock += 1
                edge_stack.append((v, w))
                stack.append((w, v, iter(g.adjacency[w])))
                descended = True
                break
            if w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if descended:
            continue

        stack.pop()
        if not stack:
            break
        u = stack[-1][0]
        if low[v] < low[u]:
            low[u] = low[v]
        if low[v] >= disc[u]:
            members: set[int] = set()
            count = 0
            while True:
                a, b = edge_stack.pop()
                members.add(a)
                members.add(b)
                count += 1
                if a == u and b == v:
                    break
            blocks.append(frozenset(members))
            block_edges.append(count)

    if clock != n:
        raise DisconnectedError(f"graph has {n} vertices but only {clock} are reachable from 0")

    blocks_of: list[list[int]] = [[] for _ in range(n)]
    for b, members in enumerate(blocks):
        for v in members:
            blocks_of[v].append(b)
    cut = frozenset(v for v in range(n) if len(blocks_of[v]) >= 2)

    return BlockCutStructure(
        blocks=tuple(blocks),
        block_edges=tuple(block_edges),
        cut_vertices=cut,
        blocks_of=tuple(tuple(bs) for bs in blocks_of),
    )


def validate_block_graph(g: Graph, bc: BlockCutStructure) -> BlockGraphReport:
    for v in range(g.n):
        if g.degree(v) == 0:
            raise NotABlockGraph(None, f"vertex {v} is isolated")
    for b, members in enumerate(bc.blocks):
        k = len(members)
        if bc.block_edges[b] != k * (k - 1) // 2:
            raise NotABlockGraph(
                b, f"{k} vertices but {bc.block_edges[b]} edges, not a clique"
            )
    return BlockGraphReport(
        n=g.n, m=g.m, blocks=len(bc.blocks), cut_vertices=len(bc.cut_vertices)
    )


def is_end_block(bc: BlockCutStructure, b: int) -> bool:
    return bc.cut_count(b) == 1


def decode_graph(data: bytes) -> str:
    """Edge lists are ASCII; any other byte is a ParseError on its line."""
    try:
        return data.decode("ascii")
    except UnicodeDecodeError as e:
        lineno = data.count(b"\n", 0, e.start) + 1
        raise ParseError(lineno, f"non-ASCII byte 0x{data[e.start]:02x}") from None


def load_block_graph(text: str) -> tuple[Graph, BlockCutStructure]:
    g = parse_graph(text)
    bc = decompose(g)
    validate_block_graph(g, bc)
    return g, bc
