import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairdom.errors import GraphError
from pairdom.gen import (
    GenSpec,
    SplitMix64,
    bowtie,
    complete_graph,
    corpus_spec,
    generate,
    path_graph,
    star_graph,
    triangle_chain,
)
from pairdom.graph import decompose, validate_block_graph


def test_splitmix_is_deterministic():
    a, b = SplitMix64(42), SplitMix64(42)
    xs = [a.next() for _ in range(20)]
    assert xs == [b.next() for _ in range(20)]
    assert len(set(xs)) == 20
    assert all(0 <= x < 2**64 for x in xs)
    assert xs != [SplitMix64(43).next() for _ in range(20)]


def test_below_and_between_bounds():
    rng = SplitMix64(7)
    for _ in range(500):
        assert 0 <= rng.below(5) < 5
        assert 2 <= rng.between(2, 4) <= 4


def test_single_k2():
    g = generate(GenSpec(seed=1, n_blocks=1, min_size=2, max_size=2))
    assert (g.n, g.m) == (2, 1)


def test_two_triangles_at_vertex_zero():
    g = generate(GenSpec(seed=5, n_blocks=2, min_size=3, max_size=3, attach_vertex=0))
    assert (g.n, g.m) == (5, 6)
    bc = decompose(g)
    assert bc.cut_vertices == frozenset({0})
    assert sorted(sorted(b) for b in bc.blocks) == [[0, 1, 2], [0, 3, 4]]


def test_same_seed_same_graph():
    spec = GenSpec(seed=42, n_blocks=5, min_size=2, max_size=4)
    assert generate(spec) == generate(spec)


@pytest.mark.parametrize(
    "spec",
    [
        dict(n_blocks=0),
        dict(n_blocks=2, min_size=1),
        dict(n_blocks=2, min_size=4, max_size=3),
        dict(n_blocks=2, max_vertices=1),
    ],
)
def test_bad_specs(spec):
    with pytest.raises(GraphError):
        GenSpec(seed=0, **spec)


@settings(max_examples=200, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**64 - 1),
    n_blocks=st.integers(min_value=1, max_value=12),
    max_size=st.integers(min_value=2, max_value=5),
)
def test_generated_graphs_are_block_graphs(seed, n_blocks, max_size):
    g = generate(GenSpec(seed=seed, n_blocks=n_blocks, min_size=2, max_size=max_size))
    bc = decompose(g)
    validate_block_graph(g, bc)
    assert len(bc.blocks) == n_blocks
    assert all(2 <= len(b) <= max_size for b in bc.blocks)
    assert g.n == 1 + sum(len(b) - 1 for b in bc.blocks)
    if n_blocks >= 2:
        assert bc.cut_vertices


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9), max_n=st.integers(min_value=2, max_value=14))
def test_corpus_respects_vertex_budget(seed, max_n):
    g = generate(corpus_spec(seed, max_n=max_n, max_size=4))
    assert 2 <= g.n <= max_n
    validate_block_graph(g, decompose(g))


def test_families():
    assert (path_graph(5).n, path_graph(5).m) == (5, 4)
    assert star_graph(4).degree(0) == 4
    assert complete_graph(5).is_complete()
    assert (bowtie().n, bowtie().m) == (5, 6)
    chain = triangle_chain(3)
    assert (chain.n, chain.m) == (7, 9)
    assert decompose(chain).cut_vertices == frozenset({2, 4})
