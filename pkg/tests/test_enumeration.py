import itertools

import networkx as nx
import numpy as np
import pytest

from conftest import brute_canonical, brute_gamma
from domspec.canon import canonical_code, is_isomorphic
from domspec.domination import domination_number
from domspec.enumeration import (
    ClassQuery, class_members, connected_graphs, free_trees, levels_to_parents, sweep,
    tree_level_sequences,
)
from domspec.families import corona, path, star
from domspec.graph import GraphError, build_graph, is_connected, is_tree

# free trees (OEIS A000055) and connected graphs (A001349)
TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741]
GRAPH_COUNTS = [1, 1, 2, 6, 21, 112, 853, 11117]


def prufer_tree_classes(n):
    """Isomorphism classes of labelled trees from every Prufer sequence, keyed by a centre-rooted code."""
    if n <= 2:
        return 1
    seen = set()
    for seq in itertools.product(range(n), repeat=n - 2):
        deg = [1] * n
        for x in seq:
            deg[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if deg[v] == 1)
            edges.append((leaf, x))
            deg[leaf] -= 1
            deg[x] -= 1
        u, w = [v for v in range(n) if deg[v] == 1]
        edges.append((u, w))
        seen.add(_centre_code(n, edges))
    return len(seen)


def _centre_code(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt

    def code(v, parent):
        return "(" + "".join(sorted(code(w, v) for w in adj[v] if w != parent)) + ")"

    return min(code(c, -1) for c in layer)


# -- trees ----------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 9))
def test_tree_counts_match_prufer(n):
    assert sum(1 for _ in free_trees(n)) == prufer_tree_classes(n) == TREE_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(1, 16))
def test_tree_counts_match_networkx(n):
    expected = sum(1 for _ in nx.nonisomorphic_trees(n)) if n > 1 else 1
    assert sum(1 for _ in tree_level_sequences(n)) == expected == TREE_COUNTS[n - 1]


def test_tree_examples():
    assert [t.n for t in free_trees(1)] == [1]
    assert sum(1 for _ in free_trees(7)) == 11
    assert sum(1 for _ in free_trees(10)) == 106


@pytest.mark.parametrize("n", [2, 5, 9, 12])
def test_trees_are_distinct_trees(n):
    codes = set()
    for t in free_trees(n):
        assert is_tree(t) and t.n == n
        codes.add(canonical_code(t))
    assert len(codes) == TREE_COUNTS[n - 1]


def test_tree_stream_deterministic():
    assert list(tree_level_sequences(9)) == list(tree_level_sequences(9))


def test_levels_to_parents():
    assert levels_to_parents((0, 1, 2, 1)) == [-1, 0, 1, 0]


def test_tree_caps():
    with pytest.raises(GraphError):
        list(free_trees(0))
    with pytest.raises(GraphError):
        list(free_trees(21))


# -- connected graphs -------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 6))
def test_graph_counts_match_labelled_brute_force(n):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    classes = set()
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if is_connected(build_graph(n, edges)):
            classes.add(brute_canonical(n, edges))
    assert sum(1 for _ in connected_graphs(n)) == len(classes) == GRAPH_COUNTS[n - 1]


@pytest.mark.parametrize("n", [6, 7])
def test_graph_counts_match_atlas(n):
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]
    ours = [nx.Graph(g.edges()) for g in connected_graphs(n)]
    assert len(ours) == len(atlas) == GRAPH_COUNTS[n - 1]
    # each atlas graph is matched by exactly one of ours
    buckets = {}
    for g in ours:
        buckets.setdefault(tuple(sorted(d for _, d in g.degree())), []).append(g)
    for a in atlas:
        cands = buckets[tuple(sorted(d for _, d in a.degree()))]
        assert sum(1 for g in cands if nx.is_isomorphic(a, g)) == 1


def test_graph_count_n8():
    codes = {canonical_code(g) for g in connected_graphs(8)}
    assert len(codes) == GRAPH_COUNTS[7]


def test_graph_examples():
    got = list(connected_graphs(3))
    assert len(got) == 2
    assert any(is_isomorphic(g, path(3)) for g in got)
    assert sum(1 for _ in connected_graphs(4)) == 6


def test_graph_caps():
    with pytest.raises(GraphError):
        list(connected_graphs(10))


# -- classes --------------------------------------------------------------------------

def test_class_query_validation():
    with pytest.raises(GraphError):
        ClassQuery(6, gamma=4)
    with pytest.raises(GraphError):
        ClassQuery(0)
    with pytest.raises(GraphError):
        ClassQuery(10, trees_only=False)
    ClassQuery(1, gamma=1)


def test_class_examples():
    s5 = list(class_members(ClassQuery(5, 1)))
    assert len(s5) == 1 and is_isomorphic(s5[0], star(5))
    # brute force over the 6 trees on 6 vertices: only P3 o K1 has gamma 3 (P3 and S3 coincide)
    oracle = [t for t in nx.nonisomorphic_trees(6) if brute_gamma(6, list(t.edges())) == 3]
    six = list(class_members(ClassQuery(6, 3)))
    assert len(six) == len(oracle) == 1
    assert is_isomorphic(six[0], corona(path(3), path(1)))
    four = list(class_members(ClassQuery(4, 2, trees_only=False)))
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert any(is_isomorphic(g, path(4)) for g in four)
    assert any(is_isomorphic(g, c4) for g in four)


def test_smallest_classes():
    assert len(list(class_members(ClassQuery(1, 1)))) == 1
    assert len(list(class_members(ClassQuery(2, 1, trees_only=False)))) == 1
    assert len(list(class_members(ClassQuery(3, 1, trees_only=False)))) == 2


@pytest.mark.parametrize("n", range(2, 15))
def test_class_sizes_sum_to_tree_count(n):
    total = sum(sum(1 for _ in class_members(ClassQuery(n, g))) for g in range(1, n // 2 + 1))
    assert total == TREE_COUNTS[n - 1]


def test_sweep_gamma_matches_direct():
    t = sweep(9, True)
    for i in range(t.size):
        assert t.gamma[i] == domination_number(t.graph(i)).gamma
    g = sweep(6, False)
    for i in range(g.size):
        assert g.gamma[i] == domination_number(g.graph(i)).gamma
        assert abs(g.rho[i] - float(np.linalg.eigvalsh(g.graph(i).adjacency_matrix())[-1])) < 1e-9
