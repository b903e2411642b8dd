from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

from pairdom.errors import InternalInvariant, NoUnmatched
from pairdom.graph import BlockCutStructure, Graph
from pairdom.ordering import RootedOrder

logger = logging.getLogger(__name__)


class Label(Enum):
    EMPTY = "empty"
    R1 = "r1"  # must dominate an unlabeled child
    R2 = "r2"  # half of a forced matched pair


class BlockKind(Enum):
    TYPE1_FIRST = "TYPE1_FIRST"
    TYPE1_SECOND = "TYPE1_SECOND"
    TYPE2_FIRST = "TYPE2_FIRST"
    TYPE2_SECOND = "TYPE2_SECOND"
    TYPE3_FIRST = "TYPE3_FIRST"
    TYPE3_SECOND = "TYPE3_SECOND"


@dataclass(frozen=True)
class BlockAnnotation:
    block: frozenset[int]  # alive members at termination, original ids
    kind: BlockKind


@dataclass(frozen=True)
class TraceEntry:
    step: int
    branch: str
    removed: tuple[int, ...]
    weight: int

    def render(self) -> str:
        ids = ",".join(str(x) for x in self.removed)
        return f"step={self.step} branch={self.branch} removed=[{ids}] D={self.weight}"


@dataclass
class PruneState:
    alive: list[bool]
    labels: list[Label]
    skip: set[int] = field(default_factory=set)
    removed_weight: int = 0
    annotations: list[BlockAnnotation] = field(default_factory=list)
    trace: list[TraceEntry] = field(default_factory=list)
    work: int = 0

    @classmethod
    def initial(cls, n: int) -> PruneState:
        return cls(alive=[True] * n, labels=[Label.EMPTY] * n)

    def alive_vertices(self) -> list[int]:
        return [v for v, ok in enumerate(self.alive) if ok]


@dataclass(frozen=True)
class PrunedGraph:
    graph: Graph
    vertices: tuple[int, ...]  # local id -> original id

    def local(self, original: int) -> int:
        for i, v in enumerate(self.vertices):
            if v == original:
                return i
        raise KeyError(original)


def _group_r1(labels: Sequence[Label], ro: RootedOrder, kids: Iterable[int]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for c in kids:
        if labels[c] is Label.R1:
            groups.setdefault(ro.up_block[c], []).append(c)
    return [sorted(g) for g in groups.values()]


def r1_children_components(state: PruneState, ro: RootedOrder, v: int) -> list[list[int]]:
    """
    R1-labelled alive children of v, grouped by the block they share with v.

    Each group is a clique, so the induced subgraph has a perfect matching
    exactly when every group has even size.
    """
    kids = (c for c in ro.children[v] if state.alive[c])
    return _group_r1(state.labels, ro, kids)


def select_unmatched(components: Iterable[Sequence[int]]) -> int:
    """
    Pair each clique component in ascending id order; odd components leave
    their largest id unmatched. Returns the smallest unmatched vertex.
    """
    unmatched = [max(c) for c in components if len(c) % 2 == 1]
    if not unmatched:
        raise NoUnmatched("every component has even size")
    return min(unmatched)


class _Pruner:
    def __init__(self, g: Graph, bc: BlockCutStructure, ro: RootedOrder) -> None:
        self.g = g
        self.bc = bc
        self.ro = ro
        self.state = PruneState.initial(g.n)
        self.block_alive = [len(b) for b in bc.blocks]
        self.child_count = [len(c) for c in ro.children]
        self.annotated: dict[int, BlockKind] = {}

    def run(self) -> PruneState:
        st = self.state
        for v in self.ro.order[:-1]:
            if not st.alive[v] or v in st.skip:
                continue
            self._step(v)

        st.annotations = [
            BlockAnnotation(
                block=frozenset(x for x in self.bc.blocks[b] if st.alive[x]), kind=kind
            )
            for b, kind in sorted(self.annotated.items())
        ]
        return st

    def _step(self, v: int) -> None:
        st = self.state
        labels = st.labels
        kids = [c for c in self.ro.children[v] if st.alive[c]]
        st.work += len(self.ro.children[v]) + 1

        if labels[v] is Label.EMPTY and all(labels[c] is Label.EMPTY for c in kids):
            f = self.ro.father[v]
            assert f is not None
            labels[f] = Label.R1
            self._record(v, "A", [], 0)
            return

        comps = _group_r1(labels, self.ro, kids)
        r1_count = sum(len(c) for c in comps)
        odd = [c for c in comps if len(c) % 2 == 1]

        if labels[v] is Label.R1 and not odd:
            keep = self._pendant_block(v, kids)
            if keep is not None:
                removed = self._remove_children(kids, lambda c: self.ro.up_block[c] != keep)
                self._record(v, "L8", removed, r1_count + self._count_r2(removed))
                return
            # each child block still holds a labeled member
            logger.debug("vertex %d: no pendant block left, dropping r1 label", v)
            labels[v] = Label.EMPTY

        if odd:
            self._prune_odd(v, kids, comps, r1_count, len(odd))
        elif labels[v] is Label.EMPTY:
            self._prune_even(v, r1_count)
        else:
            logger.debug("vertex %d: label %s, nothing to do", v, labels[v].value)

    def _prune_even(self, v: int, r1_count: int) -> None:
        kind = self._residue(
            v, BlockKind.TYPE1_FIRST, BlockKind.TYPE1_SECOND, BlockKind.TYPE2_FIRST
        )
        if kind is not None:
            return
        branch = {1: "L7", 2: "L6"}.get(self.ro.depth[v], "L3")
        removed = self._remove_subtree(v)
        self._record(v, branch, removed, r1_count + self._count_r2(removed))

    def _prune_odd(
        self, v: int, kids: list[int], comps: list[list[int]], r1_count: int, odd_count: int
    ) -> None:
        u = select_unmatched(comps)
        kind = self._residue(
            v, BlockKind.TYPE3_FIRST, BlockKind.TYPE3_SECOND, BlockKind.TYPE2_SECOND
        )
        if kind is not None:
            return
        branch = "L11" if self.ro.depth[v] >= 3 else "L13"
        removed = self._remove_children(kids, lambda c: c != u)
        labels = self.state.labels
        labels[v] = labels[u] = Label.R2
        weight = (r1_count - 1) + self._count_r2(removed) + (odd_count - 1)
        self._record(v, branch, removed, weight)

    def _residue(
        self, v: int, first: BlockKind, second: BlockKind, pendant: BlockKind
    ) -> BlockKind | None:
        """
        Shape tests near r. Returns the annotation applied when the step
        cannot prune, None when it can.
        """
        ro = self.ro
        d = ro.depth[v]
        if d >= 3:
            return None

        if d == 2:
            f = ro.father[v]
            assert f is not None
            b1, b2 = ro.up_block[v], ro.up_block[f]
            if self.block_alive[b1] >= 3 or self.child_count[f] > 1 or self.block_alive[b2] >= 3:
                return None
            self._annotate(v, b2, first)
            self.state.skip.add(f)
            return first

        b = ro.up_block[v]
        size = self.block_alive[b]
        if size >= 4:
            return None
        if size == 3:
            top = ro.block_top[b]
            third = next(
                x for x in self.bc.blocks[b] if x != v and x != top and self.state.alive[x]
            )
            if self.child_count[third] > 0:
                return None
            self._annotate(v, b, second)
            return second
        self._annotate(v, b, pendant)
        return pendant

    def _pendant_block(self, v: int, kids: list[int]) -> int | None:
        """A child block of v whose alive members are all leaves."""
        up_block = self.ro.up_block
        smallest: dict[int, int] = {}
        blocked: set[int] = set()
        for c in kids:
            b = up_block[c]
            if self.child_count[c] > 0:
                blocked.add(b)
            smallest[b] = min(smallest.get(b, c), c)
        candidates = [(min(v, m), b) for b, m in smallest.items() if b not in blocked]
        if not candidates:
            return None
        return min(candidates)[1]

    def _annotate(self, v: int, b: int, kind: BlockKind) -> None:
        if b in self.annotated:
            raise InternalInvariant(
                f"block {b} annotated twice ({self.annotated[b].value}, {kind.value})"
            )
        self.annotated[b] = kind
        self._record(v, f"ANNOT:{kind.value}", [], 0)

    def _remove_children(self, kids: list[int], pred: Callable[[int], bool]) -> list[int]:
        removed: list[int] = []
        for c in kids:
            if pred(c):
                removed.extend(self._remove_subtree(c))
        return removed

    def _remove_subtree(self, root: int) -> list[int]:
        st = self.state
        ro = self.ro
        removed: list[int] = []
        stack = [root]
        while stack:
            x = stack.pop()
            st.alive[x] = False
            removed.append(x)
            self.block_alive[ro.up_block[x]] -= 1
            f = ro.father[x]
            assert f is not None
            self.child_count[f] -= 1
            for b in ro.child_blocks[x]:
                self.block_alive[b] -= 1
            st.work += 1 + len(ro.children[x])
            stack.extend(y for y in ro.children[x] if st.alive[y])
        return removed

    def _count_r2(self, vertices: Iterable[int]) -> int:
        labels = self.state.labels
        return sum(1 for x in vertices if labels[x] is Label.R2)

    def _record(self, v: int, branch: str, removed: list[int], weight: int) -> None:
        st = self.state
        st.removed_weight += weight
        entry = TraceEntry(step=v, branch=branch, removed=tuple(sorted(removed)), weight=weight)
        st.trace.append(entry)
        logger.debug("%s", entry.render())


def prune(
    g: Graph, bc: BlockCutStructure, ro: RootedOrder, r: int
) -> tuple[PrunedGraph, PruneState]:
    """
    Walk the ordering and shrink g around r, keeping labels, skipped
    vertices and block annotations for the judgement step.

    gamma_pr(g) == gamma_pr(pruned) + state.removed_weight.
    """
    if ro.root != r:
        raise InternalInvariant(f"ordering is rooted at {ro.root}, not {r}")

    state = _Pruner(g, bc, ro).run()
    if not state.alive[r]:
        raise InternalInvariant(f"root {r} was removed")

    sub, mapping = g.induced(state.alive_vertices())
    logger.debug(
        "pruned %d -> %d vertices, removed weight %d", g.n, sub.n, state.removed_weight
    )
    return PrunedGraph(graph=sub, vertices=mapping), state


def dump_trace(state: PruneState) -> list[str]:
    return [e.render() for e in state.trace]
