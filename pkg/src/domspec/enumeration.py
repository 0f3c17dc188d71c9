"""Isomorph-free generation of free trees and small connected graphs, plus cached class sweeps.

Trees come from canonical level sequences (constant amortised time per tree).
Connected graphs come from canonical augmentation by vertex addition: a child
of a parent on ``n - 1`` vertices is kept only when its new vertex lies in the
automorphism orbit of the child's canonical deletion vertex.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .canon import _orbits, canonical_labeling
from .domination import min_dominating_mask, tree_gamma
from .graph import Graph, GraphError, build_graph, connected_masks

TREE_MAX_N = int(os.environ.get("DOMSPEC_TREE_MAX_N", 20))
GRAPH_MAX_N = int(os.environ.get("DOMSPEC_GRAPH_MAX_N", 9))


@dataclass(frozen=True)
class ClassQuery:
    n: int
    gamma: int | None = None
    trees_only: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("n must be positive")
        cap = TREE_MAX_N if self.trees_only else GRAPH_MAX_N
        if self.n > cap:
            raise GraphError(f"n={self.n} above the enumeration cap {cap}")
        if self.gamma is not None and not 1 <= self.gamma <= max(1, self.n // 2):
            raise GraphError(f"gamma must lie in 1..{max(1, self.n // 2)}")


# -- free trees ------------------------------------------------------------------

def _next_rooted(levels: list[int], p: int | None = None) -> list[int] | None:
    """Successor of a canonical rooted level sequence (None when exhausted)."""
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(levels: Sequence[int]):
    """Split at the root's second child: first subtree (shifted up) and the rest."""
    m = len(levels)
    seen = False
    for i, x in enumerate(levels):
        if x == 1:
            if seen:
                m = i
                break
            seen = True
    left = [x - 1 for x in levels[1:m]]
    rest = [0] + list(levels[m:])
    return left, rest


def _next_free(levels: list[int]) -> list[int] | None:
    """Advance to the next level sequence that is canonical as a free tree (centre-rooted)."""
    left, rest = _split(levels)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return levels
    p = len(left)
    nxt = _next_rooted(levels, p)
    if nxt is not None and levels[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def tree_level_sequences(n: int) -> Iterator[tuple[int, ...]]:
    if not 1 <= n <= TREE_MAX_N:
        raise GraphError(f"free trees supported for 1 <= n <= {TREE_MAX_N}")
    if n == 1:
        yield (0,)
        return
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _next_free(levels)
        if levels is not None:
            yield tuple(levels)
            levels = _next_rooted(levels)


def levels_to_parents(levels: Sequence[int]) -> list[int]:
    parent = [-1] * len(levels)
    stack: list[int] = []
    for i, lv in enumerate(levels):
        del stack[lv:]
        if stack:
            parent[i] = stack[-1]
        stack.append(i)
    return parent


def parents_to_graph(parent: Sequence[int]) -> Graph:
    return build_graph(len(parent), [(i, int(p)) for i, p in enumerate(parent) if p >= 0])


def free_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class, vertices numbered in preorder from a centre."""
    for levels in tree_level_sequences(n):
        yield parents_to_graph(levels_to_parents(levels))


# -- connected graphs -------------------------------------------------------------

def _vertex_key(masks: Sequence[int], v: int) -> tuple:
    m = masks[v]
    nd = []
    while m:
        low = m & -m
        nd.append(masks[low.bit_length() - 1].bit_count())
        m ^= low
    nd.sort()
    return (masks[v].bit_count(), tuple(nd))


def _subset_reps(n: int, gens: list[list[int]]) -> list[int]:
    """Orbit representatives of nonempty vertex subsets under the group generated by ``gens``."""
    full = 1 << n
    if not gens:
        return list(range(1, full))
    seen = bytearray(full)
    reps = []
    for s in range(1, full):
        if seen[s]:
            continue
        reps.append(s)
        seen[s] = 1
        stack = [s]
        while stack:
            x = stack.pop()
            for g in gens:
                y = 0
                m = x
                while m:
                    low = m & -m
                    y |= 1 << g[low.bit_length() - 1]
                    m ^= low
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return reps


def _accept(child: list[int]) -> bool:
    """True iff the last vertex is a canonical deletion vertex of ``child``."""
    n = len(child)
    new = n - 1
    keys = [_vertex_key(child, v) for v in range(n)]
    cands = [v for v in range(n) if connected_masks(child, skip=v)]
    best = max(keys[v] for v in cands)
    if keys[new] != best:
        return False
    top = [v for v in cands if keys[v] == best]
    if len(top) == 1:
        return True
    # colour: top candidates first, then everything else grouped by key
    top_set = set(top)
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        if v not in top_set:
            groups.setdefault(keys[v], []).append(v)
    cells = [top] + [groups[k] for k in sorted(groups, reverse=True)]
    _, lab, gens = canonical_labeling(child, cells)
    orb = _orbits(n, gens)
    return orb[new] == orb[lab[0]]


def _children(parent: Sequence[int], gens) -> Iterator[tuple[int, ...]]:
    n = len(parent)
    for s in _subset_reps(n, gens):
        child = list(parent) + [s]
        for v in range(n):
            if s >> v & 1:
                child[v] |= 1 << n
        if _accept(child):
            yield tuple(child)


@lru_cache(maxsize=None)
def _graph_level(n: int) -> tuple[tuple[tuple[int, ...], list], ...]:
    """Connected graphs on n vertices (as adjacency masks) with automorphism generators."""
    if n == 1:
        return (((0,), []),)
    out = []
    for parent, gens in _graph_level(n - 1):
        for child in _children(parent, gens):
            out.append((child, canonical_labeling(child)[2]))
    return tuple(out)


def connected_graph_masks(n: int) -> Iterator[tuple[int, ...]]:
    if not 1 <= n <= GRAPH_MAX_N:
        raise GraphError(f"connected graphs supported for 1 <= n <= {GRAPH_MAX_N}")
    if n == 1:
        yield (0,)
        return
    if n <= 8:
        for masks, _ in _graph_level(n):
            yield masks
        return
    # the top level is streamed; its automorphism groups are never needed
    for parent, gens in _graph_level(n - 1):
        yield from _children(parent, gens)


def connected_graphs(n: int) -> Iterator[Graph]:
    for masks in connected_graph_masks(n):
        yield Graph.from_masks(masks)


def class_members(q: ClassQuery) -> Iterator[Graph]:
    t = sweep(q.n, q.trees_only)
    for i in range(t.size):
        if q.gamma is None or t.gamma[i] == q.gamma:
            yield t.graph(i)


# -- sweep tables ------------------------------------------------------------------

_CHUNK = 16384


@dataclass
class SweepTable:
    """gamma, rho and a Perron vector for every member of a generated stream."""
    n: int
    trees_only: bool
    data: list  # parent arrays (trees) or adjacency masks (graphs)
    gamma: np.ndarray
    rho: np.ndarray
    perron: np.ndarray

    @property
    def size(self) -> int:
        return len(self.data)

    def graph(self, i: int) -> Graph:
        if self.trees_only:
            return parents_to_graph(self.data[i])
        return Graph.from_masks(self.data[i])

    def adjacency(self, idx: Sequence[int]) -> np.ndarray:
        n = self.n
        out = np.zeros((len(idx), n, n), dtype=np.int64)
        for k, i in enumerate(idx):
            item = self.data[i]
            if self.trees_only:
                for v, p in enumerate(item):
                    if p >= 0:
                        out[k, v, p] = out[k, p, v] = 1
            else:
                for v, m in enumerate(item):
                    while m:
                        low = m & -m
                        out[k, v, low.bit_length() - 1] = 1
                        m ^= low
        return out


def _gamma_chunk(args):
    trees_only, items = args
    if trees_only:
        return [tree_gamma(p, range(len(p))) for p in items]
    out = []
    for masks in items:
        closed = [m | (1 << v) for v, m in enumerate(masks)]
        out.append(min_dominating_mask(closed).bit_count())
    return out


def _gammas(trees_only: bool, data: list, workers: int) -> np.ndarray:
    chunks = [(trees_only, data[i:i + _CHUNK]) for i in range(0, len(data), _CHUNK)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_gamma_chunk, chunks))
    else:
        parts = [_gamma_chunk(c) for c in chunks]
    return np.array([g for part in parts for g in part], dtype=np.int64)


def default_workers() -> int:
    env = os.environ.get("DOMSPEC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


_WORKERS = [1]


def set_workers(k: int) -> None:
    _WORKERS[0] = max(1, int(k))


@lru_cache(maxsize=None)
def sweep(n: int, trees_only: bool = True) -> SweepTable:
    """Generate every member for ``n`` and record gamma, rho and Perron vectors.

    Spectra come from batched dense symmetric eigensolves; they screen
    candidates only, and every conclusion drawn from them is re-certified
    exactly downstream.
    """
    if trees_only:
        data = [levels_to_parents(lv) for lv in tree_level_sequences(n)]
    else:
        data = list(connected_graph_masks(n))
    gamma = _gammas(trees_only, data, _WORKERS[0])
    rho = np.zeros(len(data))
    perron = np.zeros((len(data), n))
    if n == 1:
        perron[:] = 1.0
    else:
        stub = SweepTable(n, trees_only, data, gamma, rho, perron)
        for start in range(0, len(data), _CHUNK):
            idx = range(start, min(start + _CHUNK, len(data)))
            w, v = np.linalg.eigh(stub.adjacency(idx).astype(float))
            rho[start:idx.stop] = w[:, -1]
            vec = v[:, :, -1]
            perron[start:idx.stop] = np.abs(vec)
    return SweepTable(n, trees_only, data, gamma, rho, perron)
