import networkx as nx
import pytest

from pairdom.errors import TooLarge
from pairdom.gen import GenSpec, bowtie, complete_graph, generate, path_graph
from pairdom.graph import decompose
from pairdom.oracle import core_membership, is_pds, solve


def test_is_pds_examples():
    p4 = path_graph(4)
    assert is_pds(p4, {1, 2})
    assert not is_pds(p4, {0, 3})
    assert not is_pds(p4, set())
    assert is_pds(complete_graph(3), {0, 1})
    # dominates but {0, 2, 3} has no perfect matching
    assert not is_pds(p4, {0, 2, 3})


def test_solve_p4():
    result = solve(path_graph(4))
    assert result.gamma_pr == 2
    assert result.core == frozenset({1, 2})
    assert result.min_sets == (frozenset({1, 2}),)


def test_solve_k3():
    result = solve(complete_graph(3))
    assert result.gamma_pr == 2
    assert result.num_min_sets == 3
    assert result.core == frozenset()


def test_solve_p6():
    result = solve(path_graph(6))
    assert result.gamma_pr == 4
    assert result.core == frozenset({1, 4})


def test_solve_without_sets():
    result = solve(bowtie(), keep_sets=False)
    assert result.min_sets == ()
    assert result.num_min_sets == 4
    assert result.core == frozenset({2})


def test_core_membership():
    assert core_membership(path_graph(6), 1)
    assert not core_membership(complete_graph(3), 0)
    assert core_membership(path_graph(2), 0)


def test_cap():
    with pytest.raises(TooLarge):
        solve(path_graph(6), cap=5)
    assert solve(path_graph(6), cap=6).gamma_pr == 4


def _nx_is_pds(h: nx.Graph, s: set[int]) -> bool:
    if not s or not nx.is_dominating_set(h, s):
        return False
    matching = nx.max_weight_matching(h.subgraph(s), maxcardinality=True)
    return 2 * len(matching) == len(s)


def test_min_sets_agree_with_networkx():
    for seed in range(40):
        g = generate(GenSpec(seed=seed, n_blocks=5, min_size=2, max_size=3))
        h = nx.Graph(list(g.edges()))
        result = solve(g)
        assert result.gamma_pr % 2 == 0 and result.gamma_pr >= 2
        assert len(result.min_sets) == result.num_min_sets
        for s in result.min_sets:
            assert len(s) == result.gamma_pr
            assert _nx_is_pds(h, set(s))
            assert result.core <= s
            for v in s:
                for w in g.neighbors(v):
                    if w in s:
                        assert not is_pds(g, s - {v, w})


def test_tree_leaves_avoidable():
    for seed in range(60):
        g = generate(GenSpec(seed=seed, n_blocks=7, min_size=2, max_size=2))
        core = solve(g).core
        for v in range(g.n):
            if g.degree(v) == 1 and g.n > 2:
                assert v not in core


def test_non_cut_vertices_avoidable():
    for seed in range(60):
        g = generate(GenSpec(seed=seed, n_blocks=5, min_size=2, max_size=4))
        bc = decompose(g)
        result = solve(g)
        for v in range(g.n):
            if not bc.is_cut_vertex(v):
                assert any(v not in s for s in result.min_sets)
