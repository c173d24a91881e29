import itertools

import networkx as nx
import numpy as np
import pytest

from corrcomplete.errors import NotChordal
from corrcomplete.graph import (
    Clique,
    CliqueTree,
    PatternGraph,
    build_clique_tree,
    build_pattern_graph,
    clique_graph,
    clique_tree_dot,
    find_chordless_cycle,
    is_chordal,
    maximal_cliques,
    maximum_cardinality_search,
    pattern_graph_dot,
    tree_heights,
    verify_intersection_property,
)
from corrcomplete.models import random_pattern


def _has_chordless_cycle(g):
    return any(len(cycle) >= 4 for cycle in nx.chordless_cycles(g.graph))


def _random_graph(rng, n, p):
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return PatternGraph.from_edges(n, edges)


def test_build_pattern_graph(three_path):
    g = build_pattern_graph(three_path)
    assert g.n == 3
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.non_edges() == [(0, 2)]
    assert g.label(2) == 'c'


def test_maximum_cardinality_search_tie_break():
    g = PatternGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert maximum_cardinality_search(g).order == (0, 1, 2, 3)


def test_xccy_pattern_is_chordal(xccy_fixture):
    result = is_chordal(build_pattern_graph(xccy_fixture))
    assert result
    assert result.cycle is None


def test_four_cycle_certificate(four_cycle):
    result = is_chordal(build_pattern_graph(four_cycle))
    assert not result
    assert result.cycle == (0, 1, 2, 3)


def test_certificate_is_chordless():
    g = PatternGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)])
    cycle = find_chordless_cycle(g)
    assert len(cycle) >= 4
    for a, b in itertools.combinations(range(len(cycle)), 2):
        consecutive = abs(a - b) in (1, len(cycle) - 1)
        assert g.has_edge(cycle[a], cycle[b]) == consecutive


@pytest.mark.parametrize('seed', range(40))
def test_chordality_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    for _ in range(25):
        g = _random_graph(rng, int(rng.integers(1, 9)), float(rng.uniform(0.2, 0.8)))
        result = is_chordal(g)
        assert bool(result) == (not _has_chordless_cycle(g))
        if not result:
            cycle = result.cycle
            assert len(cycle) >= 4
            for a, b in itertools.combinations(range(len(cycle)), 2):
                consecutive = abs(a - b) in (1, len(cycle) - 1)
                assert g.has_edge(cycle[a], cycle[b]) == consecutive


def test_xccy_maximal_cliques(xccy_fixture):
    cliques = maximal_cliques(build_pattern_graph(xccy_fixture))
    names = [c.labels(xccy_fixture.labels) for c in cliques]
    assert names == [['E', 'nu_E'], ['E', 'A', 'X'], ['A', 'nu_A'], ['X', 'nu_X']]


def test_edgeless_graph_has_singleton_cliques():
    g = PatternGraph.from_edges(3, [])
    cliques = maximal_cliques(g)
    assert [c.key for c in cliques] == [(0,), (1,), (2,)]
    tree = build_clique_tree(cliques)
    assert tree.edges == ()
    assert tree.components() == [[0], [1], [2]]


def test_maximal_cliques_rejects_non_chordal(four_cycle):
    with pytest.raises(NotChordal) as e:
        maximal_cliques(build_pattern_graph(four_cycle))
    assert e.value.labels == ['a', 'b', 'c', 'd']


@pytest.mark.parametrize('seed', range(20))
def test_maximal_cliques_match_networkx(seed):
    rng = np.random.default_rng(100 + seed)
    g = _random_graph(rng, 9, 0.5)
    if not is_chordal(g):
        g = PatternGraph.from_edges(9, nx.complete_to_chordal_graph(g.graph)[0].edges())
    ours = sorted(c.key for c in maximal_cliques(g))
    expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(g.graph))
    assert ours == expected


def test_xccy_clique_tree_is_star(xccy_fixture):
    tree = build_clique_tree(maximal_cliques(build_pattern_graph(xccy_fixture)))
    assert [(e.a, e.b) for e in tree.edges] == [(0, 1), (1, 2), (1, 3)]
    assert tree.separator(0, 1) == frozenset({0})
    assert verify_intersection_property(tree)
    assert tree_heights(tree, 1) == {0: 1, 1: 0, 2: 1, 3: 1}
    assert tree_heights(tree, 0) == {0: 0, 1: 1, 2: 2, 3: 2}


def test_clique_graph_weights():
    cliques = [Clique({0, 1, 2}), Clique({1, 2, 3}), Clique({3, 4})]
    graph = clique_graph(cliques)
    assert graph.edges[0, 1]['weight'] == 2
    assert graph.edges[1, 2]['separator'] == frozenset({3})
    assert not graph.has_edge(0, 2)


def test_kruskal_keeps_heavier_separators():
    # {1, 2} must be kept over {2}
    cliques = [Clique({0, 1, 2}), Clique({1, 2, 3}), Clique({2, 4})]
    tree = build_clique_tree(cliques)
    assert (0, 1) in [(e.a, e.b) for e in tree.edges]
    assert verify_intersection_property(tree)


def test_intersection_property_detects_bad_tree():
    cliques = [Clique({0, 1}), Clique({1, 2}), Clique({0, 3})]
    # path 0 - 1 - 2 here drops vertex 0 from the middle clique
    bad = CliqueTree(tuple(cliques), ((0, 1), (1, 2)))
    assert not verify_intersection_property(bad)


def test_clique_tree_rejects_cycles():
    cliques = [Clique({0, 1}), Clique({1, 2}), Clique({0, 2})]
    with pytest.raises(ValueError):
        CliqueTree(tuple(cliques), ((0, 1), (1, 2), (0, 2)))


@pytest.mark.parametrize('seed', range(20))
def test_random_chordal_trees_have_intersection_property(seed):
    rng = np.random.default_rng(200 + seed)
    g = _random_graph(rng, 12, 0.3)
    g = PatternGraph.from_edges(12, nx.complete_to_chordal_graph(g.graph)[0].edges())
    tree = build_clique_tree(maximal_cliques(g))
    assert verify_intersection_property(tree)
    assert len(tree.edges) == len(tree.cliques) - len(tree.components())


def test_dot_output(three_path, xccy_fixture):
    dot = pattern_graph_dot(build_pattern_graph(three_path))
    assert dot.startswith('graph pattern {')
    assert '"a" -- "b";' in dot
    tree = build_clique_tree(maximal_cliques(build_pattern_graph(xccy_fixture)))
    dot = clique_tree_dot(tree, xccy_fixture.labels, heights=tree_heights(tree, 1))
    assert 'c1 [label="{E, A, X}\\nheight 0"];' in dot
    assert 'c1 -- c3 [label="X"];' in dot


@pytest.mark.parametrize('seed', range(30))
def test_clique_count_is_bounded_by_vertex_count(seed):
    m = random_pattern(2 + seed, seed, fill_probability=0.2 + (seed % 5) / 10)
    assert len(maximal_cliques(build_pattern_graph(m))) <= m.n


def test_maximum_cardinality_search_long_path():
    n = 5000
    g = PatternGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    assert maximum_cardinality_search(g).order == tuple(range(n))
