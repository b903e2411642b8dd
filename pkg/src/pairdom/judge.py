from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from pairdom.errors import InvalidVertex
from pairdom.graph import BlockCutStructure, Graph, decompose, is_end_block, validate_block_graph
from pairdom.ordering import RootedOrder, vertex_ordering
from pairdom.prune import BlockKind, Label, PrunedGraph, PruneState, prune

logger = logging.getLogger(__name__)


class Category(Enum):
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    L5 = "L5"
    L6 = "L6"
    L7 = "L7"
    L8 = "L8"
    L9 = "L9"
    UNCATEGORIZED = "uncategorized"


class SpecialCase(Enum):
    ORDER_TWO = "ORDER_TWO"
    COMPLETE = "COMPLETE"
    NOT_CUT_VERTEX = "NOT_CUT_VERTEX"


ANNOTATION_CATEGORY: dict[BlockKind, Category] = {
    BlockKind.TYPE1_FIRST: Category.L3,
    BlockKind.TYPE1_SECOND: Category.L3,
    BlockKind.TYPE2_FIRST: Category.L4,
    BlockKind.TYPE2_SECOND: Category.L4,
    BlockKind.TYPE3_FIRST: Category.L5,
    BlockKind.TYPE3_SECOND: Category.L5,
}


@dataclass(frozen=True)
class CategoryCounts:
    l1: int = 0
    l2: int = 0
    l3: int = 0
    l6: int = 0
    l8: int = 0
    # (sorted block members, category) for every block containing r
    classification: tuple[tuple[tuple[int, ...], Category], ...] = ()

    def as_dict(self) -> dict[str, int]:
        return {"L1": self.l1, "L2": self.l2, "L3": self.l3, "L6": self.l6, "L8": self.l8}


@dataclass(frozen=True)
class Verdict:
    vertex: int | None
    in_all_min_pds: bool
    rule_fired: int | None
    counts: CategoryCounts
    special_case: SpecialCase | None = None


@dataclass(frozen=True)
class PipelineResult:
    order: RootedOrder | None
    pruned: PrunedGraph | None
    state: PruneState | None
    verdict: Verdict


def _category(
    block: frozenset[int],
    r: int,
    end: bool,
    state: PruneState,
    kinds: dict[frozenset[int], BlockKind],
) -> Category:
    kind = kinds.get(block)
    if kind is not None:
        return ANNOTATION_CATEGORY[kind]
    if end:
        return Category.L1 if len(block) == 2 else Category.L2

    r1 = sum(1 for x in block if x != r and state.labels[x] is Label.R1)
    has_r2 = any(state.labels[x] is Label.R2 for x in block)
    if r1 % 2 == 1:
        return Category.L8 if has_r2 else Category.L6
    if r1 > 0:
        return Category.L9 if has_r2 else Category.L7
    return Category.UNCATEGORIZED


def classify(
    gtilde: PrunedGraph, state: PruneState, bct: BlockCutStructure, r: int
) -> CategoryCounts:
    """
    Sort the blocks of the pruned graph that contain r into categories.

    Annotations win over shape: a TYPE-1 residue is an end block of size
    two and would otherwise read as L1.
    """
    r_local = gtilde.local(r)
    kinds = {a.block: a.kind for a in state.annotations}
    tally = dict.fromkeys(Category, 0)
    classification: list[tuple[tuple[int, ...], Category]] = []
    for b in bct.blocks_of[r_local]:
        block = frozenset(gtilde.vertices[x] for x in bct.blocks[b])
        cat = _category(block, r, is_end_block(bct, b), state, kinds)
        tally[cat] += 1
        classification.append((tuple(sorted(block)), cat))

    classification.sort()
    return CategoryCounts(
        l1=tally[Category.L1],
        l2=tally[Category.L2],
        l3=tally[Category.L3],
        l6=tally[Category.L6],
        l8=tally[Category.L8],
        classification=tuple(classification),
    )


def viampds(counts: CategoryCounts, vertex: int | None = None) -> Verdict:
    """Decide membership from the category counts alone; first matching rule wins."""
    l1, l2, l3, l68 = counts.l1, counts.l2, counts.l3, counts.l6 + counts.l8
    rule: int | None = None
    if l1 >= 1:
        rule = 1
    elif l2 >= 2:
        rule = 2
    elif l2 == 1 and l3 + l68 >= 1:
        rule = 3
    elif l2 == 0 and l3 >= 2:
        rule = 4
    elif l2 == 0 and l3 == 1 and l68 >= 1:
        rule = 5
    return Verdict(vertex=vertex, in_all_min_pds=rule is not None, rule_fired=rule, counts=counts)


def _special(vertex: int, value: bool, case: SpecialCase) -> PipelineResult:
    verdict = Verdict(
        vertex=vertex,
        in_all_min_pds=value,
        rule_fired=None,
        counts=CategoryCounts(),
        special_case=case,
    )
    return PipelineResult(order=None, pruned=None, state=None, verdict=verdict)


def run_pipeline(g: Graph, r: int, bc: BlockCutStructure | None = None) -> PipelineResult:
    if not 0 <= r < g.n:
        raise InvalidVertex(r, g.n)
    if bc is None:
        bc = decompose(g)
        validate_block_graph(g, bc)

    if g.n == 2:
        return _special(r, True, SpecialCase.ORDER_TWO)
    if g.is_complete():
        return _special(r, False, SpecialCase.COMPLETE)
    if not bc.is_cut_vertex(r):
        return _special(r, False, SpecialCase.NOT_CUT_VERTEX)

    ro = vertex_ordering(g, bc, r)
    pruned, state = prune(g, bc, ro, r)
    counts = classify(pruned, state, decompose(pruned.graph), r)
    verdict = viampds(counts, vertex=r)
    logger.debug(
        "vertex %d: counts %s rule %s -> %s",
        r,
        counts.as_dict(),
        verdict.rule_fired,
        verdict.in_all_min_pds,
    )
    return PipelineResult(order=ro, pruned=pruned, state=state, verdict=verdict)


def in_all_min_pds(g: Graph, r: int, bc: BlockCutStructure | None = None) -> Verdict:
    """Is r in every minimum paired-dominating set of the block graph g?"""
    return run_pipeline(g, r, bc).verdict


def core_vertices(g: Graph) -> frozenset[int]:
    """All vertices in every minimum PDS, one pipeline run per vertex."""
    bc = decompose(g)
    validate_block_graph(g, bc)
    return frozenset(v for v in range(g.n) if in_all_min_pds(g, v, bc).in_all_min_pds)
