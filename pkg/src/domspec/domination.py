"""Exact domination numbers and the dominating-set facts used for trees."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import INF, Graph, GraphError, bfs_distances, build_graph, is_connected, is_tree

SUBSET_MAX_N = 24


@dataclass(frozen=True)
class DominationCertificate:
    gamma: int
    witness: frozenset[int]
    method: str  # "tree-DP" | "subset-search"


def closed_masks(g: Graph) -> list[int]:
    return [m | (1 << v) for v, m in enumerate(g.masks)]


def dominates(g: Graph, d: Iterable[int]) -> bool:
    cover = 0
    cm = closed_masks(g)
    for v in d:
        cover |= cm[v]
    return cover == (1 << g.n) - 1


def _search(closed: Sequence[int], full: int, k: int, maxcov: int):
    """Depth-limited branch on the lowest undominated vertex; returns a bitmask or None."""

    def rec(dom: int, left: int, chosen: int):
        if dom == full:
            return chosen
        if left == 0:
            return None
        missing = full & ~dom
        if missing.bit_count() > left * maxcov:
            return None
        x = (missing & -missing).bit_length() - 1
        opts = closed[x]
        while opts:
            low = opts & -opts
            opts ^= low
            u = low.bit_length() - 1
            found = rec(dom | closed[u], left - 1, chosen | low)
            if found is not None:
                return found
        return None

    return rec(0, k, 0)


def min_dominating_mask(closed: Sequence[int]) -> int:
    n = len(closed)
    full = (1 << n) - 1
    if n == 0:
        return 0
    maxcov = max(c.bit_count() for c in closed)
    k = -(-n // maxcov)
    while True:
        found = _search(closed, full, k, maxcov)
        if found is not None:
            return found
        k += 1


def _mask_set(m: int) -> frozenset[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return frozenset(out)


def domination_number(g: Graph) -> DominationCertificate:
    """Exact gamma with a witness; trees go to the linear DP."""
    if not is_connected(g):
        raise GraphError("domination_number expects a connected graph")
    if g.n >= 1 and is_tree(g):
        return domination_number_tree(g)
    if g.n > SUBSET_MAX_N:
        raise GraphError(f"subset search capped at n={SUBSET_MAX_N}")
    best = min_dominating_mask(closed_masks(g))
    w = _mask_set(best)
    return DominationCertificate(len(w), w, "subset-search")


# -- tree dynamic programme --------------------------------------------------

_BIG = 1 << 30


def tree_dp(parent: Sequence[int], order: Sequence[int]):
    """Three-state DP over a rooted tree given in an order where parents precede children.

    States per vertex: ``inset`` (v in D), ``covered`` (v not in D but dominated
    by a child), ``open`` (v not in D and not yet dominated; its parent must be).
    Returns the three state arrays.
    """
    n = len(parent)
    inset = [1] * n
    covered = [0] * n
    opened = [0] * n
    force = [_BIG] * n
    for v in reversed(order):
        if force[v] >= _BIG:
            covered[v] = _BIG
        else:
            covered[v] += force[v]
        p = parent[v]
        if p >= 0:
            a, b, c = inset[v], covered[v], opened[v]
            ab = a if a < b else b
            inset[p] += ab if ab < c else c
            covered[p] += ab
            if a - ab < force[p]:
                force[p] = a - ab
            opened[p] += b
    return inset, covered, opened


def tree_gamma(parent: Sequence[int], order: Sequence[int]) -> int:
    inset, covered, _ = tree_dp(parent, order)
    r = order[0]
    return min(inset[r], covered[r])


def _rooted(t: Graph, root: int = 0):
    parent = [-1] * t.n
    order = [root]
    seen = {root}
    for v in order:
        for w in sorted(t.adj[v]):
            if w not in seen:
                seen.add(w)
                parent[w] = v
                order.append(w)
    return parent, order


def domination_number_tree(t: Graph) -> DominationCertificate:
    if not is_tree(t):
        raise GraphError("domination_number_tree needs a tree")
    if t.n == 1:
        return DominationCertificate(1, frozenset({0}), "tree-DP")
    parent, order = _rooted(t)
    inset, covered, opened = tree_dp(parent, order)
    kids: list[list[int]] = [[] for _ in range(t.n)]
    for v in order[1:]:
        kids[parent[v]].append(v)
    # walk back down, choosing each vertex's state; ties prefer the lower id in D
    witness = []
    root = order[0]
    stack = [(root, "inset" if inset[root] <= covered[root] else "covered")]
    while stack:
        v, state = stack.pop()
        ch = kids[v]
        if state == "inset":
            witness.append(v)
            for c in ch:
                vals = {"inset": inset[c], "covered": covered[c], "open": opened[c]}
                stack.append((c, min(vals, key=lambda s: (vals[s], s != "inset"))))
        elif state == "open":
            for c in ch:
                stack.append((c, "covered"))
        else:
            best_c, best_gap = None, _BIG
            for c in ch:
                gap = inset[c] - min(inset[c], covered[c])
                if gap < best_gap:
                    best_c, best_gap = c, gap
            for c in ch:
                if c == best_c:
                    stack.append((c, "inset"))
                else:
                    stack.append((c, "inset" if inset[c] <= covered[c] else "covered"))
    w = frozenset(witness)
    return DominationCertificate(len(w), w, "tree-DP")


# -- structured sets and facts ------------------------------------------------

def support_vertices(t: Graph) -> set[int]:
    return {next(iter(t.adj[v])) for v in range(t.n) if len(t.adj[v]) == 1}


def support_min_dominating_set(t: Graph) -> frozenset[int]:
    """A minimum dominating set holding every support vertex.

    Starts from the DP witness and swaps each pendant member for its support
    vertex; with one pendant per support this keeps the size, and with more it
    would shrink the set, which minimality rules out.
    """
    if not is_tree(t) or t.n < 2:
        raise GraphError("support_min_dominating_set needs a tree with n >= 2")
    cert = domination_number_tree(t)
    d = set(cert.witness)
    if t.n == 2:
        return frozenset({min(d)})
    for s in sorted(support_vertices(t)):
        if s in d:
            continue
        pend = [v for v in t.adj[s] if len(t.adj[v]) == 1]
        d.difference_update(pend)
        d.add(s)
    if len(d) != cert.gamma or not dominates(t, d):
        raise AssertionError("support swap broke minimality")
    return frozenset(d)


def min_pairwise_distance(g: Graph, d: Iterable[int]) -> float:
    d = sorted(set(d))
    if len(d) < 2:
        raise ValueError("need at least two vertices")
    best = INF
    for i, u in enumerate(d[:-1]):
        dist = bfs_distances(g, u)
        for v in d[i + 1:]:
            best = min(best, dist[v])
    return best


def heavy_dominator_exists(g: Graph, d: Iterable[int]) -> bool:
    """True iff some member of ``d`` has at least three neighbours outside ``d``."""
    d = set(d)
    if not dominates(g, d):
        raise GraphError("set does not dominate")
    return any(len(g.adj[v] - d) >= 3 for v in d)


def all_minimum_dominating_sets(g: Graph, gamma: int | None = None):
    """Every dominating set of size gamma (brute force over combinations)."""
    if gamma is None:
        gamma = domination_number(g).gamma
    cm = closed_masks(g)
    full = (1 << g.n) - 1
    for combo in combinations(range(g.n), gamma):
        cover = 0
        for v in combo:
            cover |= cm[v]
        if cover == full:
            yield frozenset(combo)


def dominating_spanning_tree(g: Graph, d: Iterable[int]) -> Graph:
    """Spanning tree of ``g`` in which ``d`` still dominates.

    Each vertex outside ``d`` keeps one edge to its lowest-id neighbour in ``d``;
    the stars formed this way are then joined by original edges (Kruskal over
    the remaining edges in sorted order).
    """
    d = set(d)
    if not dominates(g, d):
        raise GraphError("set does not dominate")
    if not is_connected(g):
        raise GraphError("graph is not connected")
    if is_tree(g):
        return g
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = []
    for v in range(g.n):
        if v not in d:
            u = min(g.adj[v] & d)
            kept.append((min(u, v), max(u, v)))
            parent[find(v)] = find(u)
    for u, v in g.edges():
        if (u, v) in kept:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept.append((u, v))
    return build_graph(g.n, kept)
