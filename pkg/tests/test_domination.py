import random

import pytest
from hypothesis import given, strategies as st

from conftest import brute_gamma, rand_connected, rand_tree
from domspec.domination import (
    all_minimum_dominating_sets, dominates, dominating_spanning_tree, domination_number,
    heavy_dominator_exists, min_pairwise_distance, support_min_dominating_set, support_vertices,
)
from domspec.families import corona, g2_graph, h, path, star
from domspec.graph import GraphError, build_graph, is_tree


# -- examples ------------------------------------------------------------------------

@pytest.mark.parametrize("g,gamma", [
    (build_graph(1, []), 1), (path(2), 1), (star(6), 1), (path(4), 2), (path(7), 3),
    (path(9), 3), (h(8), 2), (g2_graph(2, 1, 2), 3),
])
def test_known_values(g, gamma):
    cert = domination_number(g)
    assert cert.gamma == gamma
    assert len(cert.witness) == gamma and dominates(g, cert.witness)


def test_paths_formula():
    for n in range(1, 30):
        assert domination_number(path(n)).gamma == -(-n // 3)


def test_cycle_uses_subset_search():
    c7 = build_graph(7, [(i, (i + 1) % 7) for i in range(7)])
    cert = domination_number(c7)
    assert cert.gamma == 3 and cert.method == "subset-search"
    assert domination_number(path(5)).method == "tree-DP"


def test_rejects_disconnected():
    with pytest.raises(GraphError):
        domination_number(build_graph(3, [(0, 1)]))


# -- oracles ----------------------------------------------------------------------------

def test_tree_dp_matches_subset_search():
    from domspec.domination import closed_masks, min_dominating_mask

    rng = random.Random(8)
    for _ in range(300):
        t = rand_tree(rng, rng.randint(1, 16))
        dp = domination_number(t)
        assert dp.method == "tree-DP"
        assert dp.gamma == min_dominating_mask(closed_masks(t)).bit_count()
        assert dominates(t, dp.witness)


def test_against_brute_force_combinations():
    rng = random.Random(9)
    for _ in range(150):
        g = rand_connected(rng, rng.randint(1, 10), rng.random() * 0.5)
        assert domination_number(g).gamma == brute_gamma(g.n, g.edges())


@given(st.integers(2, 14), st.randoms(use_true_random=False))
def test_gamma_at_most_half(n, r):
    # Ore: connected graphs on n >= 2 vertices have gamma <= n/2
    g = rand_tree(r, n)
    assert domination_number(g).gamma <= n // 2


# -- structured sets ---------------------------------------------------------------

def test_support_vertices_example():
    assert support_vertices(path(5)) == {1, 3}
    assert support_vertices(star(5)) == {0}


def test_support_min_dominating_set_examples():
    assert support_min_dominating_set(path(2)) == frozenset({0})
    d = support_min_dominating_set(path(5))
    assert d == frozenset({1, 3})
    d = support_min_dominating_set(g2_graph(2, 1, 2))
    assert {0, 1, 2} == set(d)


def test_support_set_property():
    rng = random.Random(10)
    for _ in range(300):
        t = rand_tree(rng, rng.randint(2, 18))
        d = support_min_dominating_set(t)
        assert support_vertices(t) <= d or t.n == 2
        assert dominates(t, d) and len(d) == domination_number(t).gamma


def test_support_set_needs_tree():
    with pytest.raises(GraphError):
        support_min_dominating_set(build_graph(3, [(0, 1), (1, 2), (0, 2)]))


def test_min_pairwise_distance():
    assert min_pairwise_distance(g2_graph(2, 1, 2), [0, 1, 2]) == 3
    with pytest.raises(ValueError):
        min_pairwise_distance(path(3), [1])


def test_heavy_dominator():
    assert heavy_dominator_exists(star(5), [0])
    assert not heavy_dominator_exists(path(6), [1, 4])
    with pytest.raises(GraphError):
        heavy_dominator_exists(path(6), [0])


def test_minimum_sets_pairwise_distance_at_most_three():
    rng = random.Random(12)
    for _ in range(200):
        t = rand_tree(rng, rng.randint(4, 12))
        gamma = domination_number(t).gamma
        if gamma < 2:
            continue
        for d in all_minimum_dominating_sets(t, gamma):
            assert min_pairwise_distance(t, d) <= 3


def test_all_minimum_sets_count():
    assert sorted(map(sorted, all_minimum_dominating_sets(path(4)))) == [[0, 2], [0, 3], [1, 2], [1, 3]]


# -- spanning trees -----------------------------------------------------------------------

def test_spanning_tree_of_tree_is_itself():
    t = path(5)
    assert dominating_spanning_tree(t, [1, 3]) is t


def test_spanning_tree_examples():
    c6 = build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    t = dominating_spanning_tree(c6, [0, 3])
    assert is_tree(t) and dominates(t, [0, 3]) and set(t.edges()) <= set(c6.edges())


def test_spanning_tree_property():
    rng = random.Random(13)
    for _ in range(200):
        g = rand_connected(rng, rng.randint(2, 12), 0.4)
        d = domination_number(g).witness
        t = dominating_spanning_tree(g, d)
        assert is_tree(t) and dominates(t, d)
        assert set(t.edges()) <= set(g.edges())
        assert domination_number(t).gamma == len(d)


def test_spanning_tree_rejects_non_dominating():
    with pytest.raises(GraphError):
        dominating_spanning_tree(path(5), [0])


# -- coronas ----------------------------------------------------------------------------------

def test_corona_gamma_is_half():
    rng = random.Random(14)
    for _ in range(50):
        core = rand_tree(rng, rng.randint(1, 9))
        c = corona(core, path(1))
        assert domination_number(c).gamma == core.n
