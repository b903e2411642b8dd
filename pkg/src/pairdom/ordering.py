from __future__ import annotations

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

from pairdom.errors import InternalInvariant, InvalidVertex, NotACutVertex
from pairdom.graph import BlockCutStructure, Graph


@dataclass(frozen=True)
class RootedOrder:
    """
    Vertex ordering rooted at `root` (the root comes last) together with
    the father/children structure it induces.

    Every non-root vertex v is a non-top member of exactly one block,
    `up_block[v]`; the top of that block (its vertex nearest the root)
    is `father[v]`.
    """

    root: int
    order: tuple[int, ...]
    position: tuple[int, ...]
    father: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]
    up_block: tuple[int, ...]  # -1 for the root
    child_blocks: tuple[tuple[int, ...], ...]
    block_top: tuple[int, ...]

    def descendants(self, v: int) -> Iterator[int]:
        """D(v): every vertex whose father chain reaches v, v excluded."""
        stack = list(self.children[v])
        while stack:
            x = stack.pop()
            yield x
            stack.extend(self.children[x])

    def subtree(self, v: int) -> list[int]:
        """D[v] = {v} plus D(v)."""
        return [v, *self.descendants(v)]


def bfs_depths(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for w in g.adjacency[x]:
            if dist[w] == -1:
                dist[w] = dist[x] + 1
                queue.append(w)
    return dist


def distance_to_block(g: Graph, v: int, block: frozenset[int]) -> int:
    """Largest distance from v to a vertex of the block."""
    dist = bfs_depths(g, v)
    return max(dist[u] for u in block)


def _peel_sequence(n: int, members: list[list[int]], block_dist: list[int]) -> list[int]:
    """
    Blocks by non-increasing d(r, B), ties by smallest member then block id.
    Two bucket passes, no comparison sort; `members` lists are ascending.
    """
    by_least: list[list[int]] = [[] for _ in range(n)]
    for b, ms in enumerate(members):
        by_least[ms[0]].append(b)
    by_dist: list[list[int]] = [[] for _ in range(max(block_dist) + 1)]
    for x in range(n):
        for b in by_least[x]:
            by_dist[block_dist[b]].append(b)
    return [b for bucket in reversed(by_dist) for b in bucket]


def vertex_ordering(g: Graph, bc: BlockCutStructure, r: int) -> RootedOrder:
    """
    Peel end blocks farthest from r, non-cut members in ascending id,
    until only r is left.

    d(r, B) is computed once from a breadth-first search; a block's
    child blocks are strictly farther from r, so processing blocks by
    non-increasing d(r, B) (ties by smallest member id, then block id)
    always takes an end block of what remains.
    """
    n = g.n
    if not 0 <= r < n:
        raise InvalidVertex(r, n)
    if not bc.is_cut_vertex(r):
        raise NotACutVertex(r)

    dist = bfs_depths(g, r)
    nb = len(bc.blocks)
    members: list[list[int]] = [[] for _ in range(nb)]
    for x in range(n):
        for b in bc.blocks_of[x]:
            members[b].append(x)

    block_top = [-1] * nb
    block_dist = [0] * nb
    for b in range(nb):
        top = min(members[b], key=lambda x: dist[x])
        block_top[b] = top
        block_dist[b] = dist[top] + 1

    keyed = _peel_sequence(n, members, block_dist)

    order: list[int] = []
    father: list[int | None] = [None] * n
    up_block = [-1] * n
    child_blocks: list[list[int]] = [[] for _ in range(n)]
    children: list[list[int]] = [[] for _ in range(n)]
    for b in keyed:
        top = block_top[b]
        child_blocks[top].append(b)
        for x in members[b]:
            if x == top:
                continue
            if x == r:
                raise InternalInvariant(f"root {r} is a non-top member of block {b}")
            order.append(x)
            father[x] = top
            up_block[x] = b
            children[top].append(x)
    order.append(r)

    if len(order) != n:
        raise InternalInvariant(f"ordering covers {len(order)} of {n} vertices")

    position = [0] * n
    for i, x in enumerate(order):
        position[x] = i

    for x in order[:-1]:
        latest = max(g.adjacency[x], key=lambda w: position[w])
        if latest != father[x]:
            raise InternalInvariant(
                f"father of {x} is {father[x]} but its latest neighbor is {latest}"
            )

    return RootedOrder(
        root=r,
        order=tuple(order),
        position=tuple(position),
        father=tuple(father),
        children=tuple(tuple(c) for c in children),
        depth=tuple(dist),
        up_block=tuple(up_block),
        child_blocks=tuple(tuple(c) for c in child_blocks),
        block_top=tuple(block_top),
    )


def depths(ro: RootedOrder) -> list[int]:
    """d(r, v) recomputed from father links, walking the order backwards."""
    out = [0] * len(ro.order)
    for x in reversed(ro.order[:-1]):
        f = ro.father[x]
        assert f is not None
        out[x] = out[f] + 1
    return out


def dump_order(ro: RootedOrder) -> list[str]:
    lines = []
    for x in ro.order:
        f = ro.father[x]
        lines.append(f"{x}\t{ro.position[x]}\t{'-' if f is None else f}\t{ro.depth[x]}")
    return lines
