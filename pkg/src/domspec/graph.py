"""Simple undirected graphs, structural queries and graph6 I/O.

Vertices are the dense ids ``0..n-1``.  A :class:`Graph` is immutable; every
surgery in the package returns a new instance.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

INF = float("inf")


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for u, nb in enumerate(self.adj):
            if u in nb:
                raise GraphError(f"loop at vertex {u}")
            for v in nb:
                if not 0 <= v < self.n:
                    raise GraphError(f"vertex id {v} out of range")
                if u not in self.adj[v]:
                    raise GraphError(f"asymmetric adjacency {u}-{v}")

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        n = len(masks)
        adj = []
        for m in masks:
            nb = []
            while m:
                low = m & -m
                nb.append(low.bit_length() - 1)
                m ^= low
            adj.append(frozenset(nb))
        return cls(n, tuple(adj))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in nb) for nb in self.adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adj]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == 1]

    # -- surgery -----------------------------------------------------------
    def with_edges(self, add: Iterable[tuple[int, int]] = (),
                   remove: Iterable[tuple[int, int]] = (), extra_vertices: int = 0) -> Graph:
        rows = [set(nb) for nb in self.adj] + [set() for _ in range(extra_vertices)]
        n = len(rows)
        for u, v in remove:
            if v not in rows[u]:
                raise GraphError(f"edge {u}-{v} absent")
            rows[u].discard(v)
            rows[v].discard(u)
        for u, v in add:
            _check_pair(n, u, v)
            rows[u].add(v)
            rows[v].add(u)
        return Graph(n, tuple(frozenset(r) for r in rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling is not a permutation")
        rows: list[frozenset[int]] = [frozenset()] * self.n
        for v in range(self.n):
            rows[perm[v]] = frozenset(perm[u] for u in self.adj[v])
        return Graph(self.n, tuple(rows))

    def induced(self, keep: Sequence[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``keep`` (relabelled 0..k-1 in the given order)."""
        index = {v: i for i, v in enumerate(keep)}
        rows = tuple(frozenset(index[u] for u in self.adj[v] if u in index) for v in keep)
        return Graph(len(keep), rows), list(keep)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_pair(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"vertex id out of range in edge ({u}, {v}) for n={n}")
    if u == v:
        raise GraphError(f"loop edge ({u}, {u})")


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on ``n`` vertices with the given edges (duplicates collapse)."""
    if n < 0:
        raise GraphError("negative vertex count")
    rows = [set() for _ in range(n)]
    for u, v in edges:
        _check_pair(n, u, v)
        rows[u].add(v)
        rows[v].add(u)
    return Graph(n, tuple(frozenset(r) for r in rows))


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return INF not in bfs_distances(g, 0)


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path edge count; ``inf`` when ``u`` and ``v`` are disconnected."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise GraphError(f"invalid vertex id {x}")
    return bfs_distances(g, u)[v]


def connected_masks(masks: Sequence[int], skip: int = -1) -> bool:
    """Bitmask connectivity test, optionally ignoring vertex ``skip``."""
    n = len(masks)
    full = (1 << n) - 1
    if skip >= 0:
        full &= ~(1 << skip)
    if not full:
        return True
    start = full & -full
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        nb = masks[low.bit_length() - 1] & full & ~seen
        seen |= nb
        frontier |= nb
    return seen == full


# -- graph6 ---------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def emit_graph6(g: Graph) -> str:
    """graph6 encoding (no ``>>graph6<<`` header)."""
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bits.append(1 if i in row else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _encode_n(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x < 64 for x in data):
        raise GraphError("graph6 byte outside 63..126")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise GraphError("truncated graph6 length header")
        n, pos = 0, 8
        for x in data[2:8]:
            n = (n << 6) | x
    else:
        if len(data) < 4:
            raise GraphError("truncated graph6 length header")
        n, pos = 0, 4
        for x in data[1:4]:
            n = (n << 6) | x
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    rows = [set() for _ in range(n)]
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                rows[i].add(j)
                rows[j].add(i)
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise GraphError("nonzero padding bits in graph6 string")
    return Graph(n, tuple(frozenset(r) for r in rows))
