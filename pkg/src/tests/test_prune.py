import networkx as nx
import pytest

from pairdom.errors import NoUnmatched
from pairdom.gen import GenSpec, SplitMix64, bowtie, generate, path_graph, star_graph
from pairdom.graph import Graph, decompose
from pairdom.ordering import vertex_ordering
from pairdom.prune import (
    BlockKind,
    Label,
    PruneState,
    dump_trace,
    prune,
    r1_children_components,
    select_unmatched,
)


def _prune(g: Graph, r: int):
    bc = decompose(g)
    ro = vertex_ordering(g, bc, r)
    pruned, state = prune(g, bc, ro, r)
    return ro, pruned, state


def _branches(state: PruneState) -> list[str]:
    return [e.branch for e in state.trace]


def test_select_unmatched():
    assert select_unmatched([[3], [7]]) == 3
    assert select_unmatched([[1, 2, 5]]) == 5
    assert select_unmatched([[2, 4], [6]]) == 6
    with pytest.raises(NoUnmatched):
        select_unmatched([[2, 4]])
    with pytest.raises(NoUnmatched):
        select_unmatched([])


def test_r1_children_components_groups_by_block():
    # triangle {0,1,2}, pendant edges 0-3 and 0-4
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)])
    ro = vertex_ordering(g, decompose(g), 0)
    state = PruneState.initial(g.n)
    assert r1_children_components(state, ro, 0) == []

    state.labels[1] = state.labels[2] = Label.R1
    assert r1_children_components(state, ro, 0) == [[1, 2]]

    state.labels[1] = state.labels[2] = Label.EMPTY
    state.labels[3] = state.labels[4] = Label.R1
    assert sorted(r1_children_components(state, ro, 0)) == [[3], [4]]

    state.alive[4] = False
    assert r1_children_components(state, ro, 0) == [[3]]


def test_clique_union_matching_agrees_with_networkx():
    rng = SplitMix64(2024)
    for _ in range(1000):
        sizes = []
        total = 0
        while total < 12 and (not sizes or rng.below(3)):
            k = rng.between(1, min(5, 12 - total))
            sizes.append(k)
            total += k

        h = nx.Graph()
        comps = []
        nxt = 0
        for k in sizes:
            members = list(range(nxt, nxt + k))
            nxt += k
            comps.append(members)
            h.add_nodes_from(members)
            h.add_edges_from((a, b) for i, a in enumerate(members) for b in members[i + 1 :])

        matching = nx.max_weight_matching(h, maxcardinality=True)
        perfect = 2 * len(matching) == total
        assert perfect == all(len(c) % 2 == 0 for c in comps)
        assert len(matching) == sum(len(c) // 2 for c in comps)

        if not perfect:
            u = select_unmatched(comps)
            rest = h.copy()
            rest.remove_node(u)
            assert len(nx.max_weight_matching(rest, maxcardinality=True)) == len(matching)


def test_star_only_marks_root():
    _, pruned, state = _prune(star_graph(3), 0)
    assert _branches(state) == ["A", "A", "A"]
    assert state.labels[0] is Label.R1
    assert state.removed_weight == 0
    assert pruned.vertices == (0, 1, 2, 3)


def test_bowtie_no_removal():
    _, pruned, state = _prune(bowtie(), 2)
    assert _branches(state) == ["A", "A", "A", "A"]
    assert pruned.graph.n == 5
    assert state.labels[2] is Label.R1


def test_path_cascade():
    # 0-1-2-...-7 rooted at 6
    _, pruned, state = _prune(path_graph(8), 6)
    assert _branches(state) == ["A", "L8", "L11", "L3", "A", "L8", "A"]
    l3 = state.trace[3]
    assert l3.step == 3
    assert l3.removed == (0, 1, 2, 3)
    assert l3.weight == 2
    assert state.removed_weight == 2
    assert pruned.vertices == (4, 5, 6, 7)
    assert state.labels[5] is Label.R1
    assert state.labels[6] is Label.R1


def test_type3_first_residue_keeps_everything():
    # P6 rooted at 1: vertex 3 has an odd R1 child and sits two steps from r
    _, pruned, state = _prune(path_graph(6), 1)
    assert [(a.block, a.kind) for a in state.annotations] == [
        (frozenset({1, 2}), BlockKind.TYPE3_FIRST)
    ]
    assert state.skip == {2}
    assert pruned.graph.n == 6
    assert state.removed_weight == 0
    assert "ANNOT:TYPE3_FIRST" in _branches(state)


def test_type1_first_residue():
    # P8 rooted at 5
    _, _, state = _prune(path_graph(8), 5)
    assert [(a.block, a.kind) for a in state.annotations] == [
        (frozenset({4, 5}), BlockKind.TYPE1_FIRST)
    ]
    assert state.skip == {4}
    assert state.labels[6] is Label.R1


def test_type1_second_residue():
    g = Graph.from_edges(
        8, [(0, 1), (0, 2), (1, 2), (1, 3), (3, 4), (4, 7), (0, 5), (5, 6)]
    )
    _, _, state = _prune(g, 0)
    kinds = {a.block: a.kind for a in state.annotations}
    assert kinds == {frozenset({0, 1, 2}): BlockKind.TYPE1_SECOND}
    assert state.labels[3] is Label.R2
    assert state.labels[4] is Label.R2
    assert "L13" in _branches(state)


def test_type2_second_residue():
    # triangle {0,1,2} plus chain 0-3-4-5, rooted at 0
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (4, 5)])
    _, pruned, state = _prune(g, 0)
    kinds = {a.block: a.kind for a in state.annotations}
    assert kinds == {frozenset({0, 3}): BlockKind.TYPE2_SECOND}
    assert pruned.graph.n == 6


def test_r1_without_pendant_block_falls_back_to_plain_prune():
    g = Graph.from_edges(
        10,
        [
            (0, 1),
            (0, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (4, 6),
            (4, 7),
            (5, 6),
            (5, 7),
            (6, 7),
            (6, 8),
            (7, 9),
        ],
    )
    ro, pruned, state = _prune(g, 0)
    assert ro.order == (8, 9, 5, 6, 7, 4, 3, 1, 2, 0)
    step4 = next(e for e in state.trace if e.step == 4)
    assert step4.branch == "L3"
    assert step4.removed == (4, 5, 6, 7, 8, 9)
    assert step4.weight == 2
    assert pruned.vertices == (0, 1, 2, 3)
    assert state.removed_weight == 2


def test_dump_trace_format():
    _, _, state = _prune(path_graph(8), 6)
    lines = dump_trace(state)
    assert lines[0] == "step=0 branch=A removed=[] D=0"
    assert lines[3] == "step=3 branch=L3 removed=[0,1,2,3] D=2"


def test_state_invariants_on_generated_graphs():
    for seed in range(150):
        g = generate(GenSpec(seed=seed, n_blocks=9, min_size=2, max_size=4))
        bc = decompose(g)
        for r in sorted(bc.cut_vertices):
            ro = vertex_ordering(g, bc, r)
            pruned, state = prune(g, bc, ro, r)

            assert state.alive[r]
            for v in state.alive_vertices():
                if v != r:
                    assert state.alive[ro.father[v]]
            for s in state.skip:
                assert state.alive[s]
            for a in state.annotations:
                assert r in a.block
            assert len({a.block for a in state.annotations}) == len(state.annotations)
            assert state.work <= 4 * (g.n + g.m)
            assert sum(e.weight for e in state.trace) == state.removed_weight
            assert pruned.vertices == tuple(state.alive_vertices())


class _RecordingSkip(set):
    """Skip set that remembers each member's label at the moment it joins."""

    def __init__(self, labels: list[Label]) -> None:
        super().__init__()
        self.labels = labels
        self.joined: dict[int, Label] = {}

    def add(self, v: int) -> None:
        self.joined[v] = self.labels[v]
        super().add(v)


def test_skipped_vertices_keep_their_label_and_stay_alive(monkeypatch):
    recorders: list[_RecordingSkip] = []

    def recording_initial(cls, n: int) -> PruneState:
        labels = [Label.EMPTY] * n
        skip = _RecordingSkip(labels)
        recorders.append(skip)
        return cls(alive=[True] * n, labels=labels, skip=skip)

    monkeypatch.setattr(PruneState, "initial", classmethod(recording_initial))

    cases = [(path_graph(6), 1), (path_graph(8), 5)]
    for seed in range(100):
        g = generate(GenSpec(seed=seed, n_blocks=8, min_size=2, max_size=3))
        cases.extend((g, r) for r in sorted(decompose(g).cut_vertices))

    joined = 0
    for g, r in cases:
        _, _, state = _prune(g, r)
        skip = recorders[-1]
        assert state.skip is skip
        assert set(skip.joined) == state.skip
        for v, label in skip.joined.items():
            assert state.alive[v]
            assert state.labels[v] is label
        joined += len(skip.joined)
    assert joined >= 2
