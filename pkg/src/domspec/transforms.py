"""Graph surgeries whose effect on the spectral radius has a known sign.

Every function returns a new :class:`Graph`; inputs are never mutated.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .canon import canonical_code
from .domination import domination_number
from .graph import Graph, GraphError, is_tree


@dataclass(frozen=True)
class InternalPath:
    vertices: tuple[int, ...]

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


def internal_paths(g: Graph) -> set[InternalPath]:
    """All maximal paths between vertices of degree >= 3 through degree-2 interiors.

    A path may close on itself (first vertex equal to last).  Each path is
    reported once, in the orientation whose vertex tuple is smaller.
    """
    out = set()
    deg = g.degrees()
    for s in range(g.n):
        if deg[s] < 3:
            continue
        for w in g.adj[s]:
            seq = [s, w]
            prev, cur = s, w
            while deg[cur] == 2 and cur != s:
                nxt = next(x for x in g.adj[cur] if x != prev)
                prev, cur = cur, nxt
                seq.append(cur)
            if deg[cur] >= 3:
                t = tuple(seq)
                out.add(InternalPath(min(t, t[::-1])))
    return out


def subdivide(g: Graph, edge: tuple[int, int], k: int = 1) -> Graph:
    """Insert ``k`` new degree-2 vertices (ids n, n+1, ...) into ``edge``."""
    u, v = edge
    if k not in (1, 2):
        raise GraphError("k must be 1 or 2")
    if not g.has_edge(u, v):
        raise GraphError(f"edge {u}-{v} absent")
    chain = [u] + list(range(g.n, g.n + k)) + [v]
    add = list(zip(chain, chain[1:]))
    return g.with_edges(add=add, remove=[(u, v)], extra_vertices=k)


# -- pendant paths --------------------------------------------------------------

def pendant_path_from(g: Graph, root: int, first: int) -> tuple[int, ...] | None:
    """The pendant path that leaves ``root`` through ``first``, or None if it is not one."""
    if not g.has_edge(root, first):
        return None
    seq = [first]
    prev, cur = root, first
    while len(g.adj[cur]) == 2:
        nxt = next(x for x in g.adj[cur] if x != prev)
        if nxt == root:
            return None
        prev, cur = cur, nxt
        seq.append(cur)
    return tuple(seq) if len(g.adj[cur]) == 1 else None


def pendant_paths(g: Graph, u: int) -> list[tuple[int, ...]]:
    """Pendant paths at ``u`` (excluding ``u``), longest first, ties by vertex tuple."""
    paths = []
    for w in sorted(g.adj[u]):
        p = pendant_path_from(g, u, w)
        if p is not None:
            paths.append(p)
    paths.sort(key=lambda p: (-len(p), p))
    return paths


def _check_pendant(g: Graph, v: int, seq: Sequence[int], name: str):
    seq = tuple(seq)
    if not seq or pendant_path_from(g, v, seq[0]) != seq:
        raise GraphError(f"{name} is not a pendant path at {v}")


def slide_path(g: Graph, v: int, s_path: Sequence[int], t_path: Sequence[int]) -> Graph:
    """Move the last vertex of the shorter pendant path to the end of the longer one."""
    if len(s_path) < 1:
        raise GraphError("s must be at least 1")
    if len(s_path) > len(t_path):
        raise GraphError("s must not exceed t")
    _check_pendant(g, v, s_path, "s_path")
    _check_pendant(g, v, t_path, "t_path")
    if set(s_path) & set(t_path):
        raise GraphError("paths overlap")
    x = s_path[-1]
    before = s_path[-2] if len(s_path) > 1 else v
    return g.with_edges(add=[(t_path[-1], x)], remove=[(before, x)])


def shift_edges(g: Graph, u: int, v: int, w: Iterable[int]) -> Graph:
    """Replace the edges v-w_i by u-w_i."""
    w = sorted(set(w))
    if u == v:
        raise GraphError("u and v must differ")
    if u in w:
        raise GraphError("u may not be in w")
    for x in w:
        if x not in g.adj[v] or x in g.adj[u]:
            raise GraphError(f"{x} must be a neighbour of v and not of u")
    return g.with_edges(add=[(u, x) for x in w], remove=[(v, x) for x in w])


def _qualifying(g: Graph, u: int):
    if len(g.adj[u]) < 3:
        raise GraphError(f"{u} is not a branching vertex")
    paths = pendant_paths(g, u)
    if len(paths) < 2:
        raise GraphError(f"{u} has fewer than two pendant paths")
    return paths


def tr1(g: Graph, d: Iterable[int], u: int) -> Graph:
    """Cut each shorter pendant path after its first vertex and hang the rest on the longest path's end.

    Paths of length 1 have nothing past their first vertex and stay put.
    """
    if u not in set(d):
        raise GraphError("tr1 needs u in d")
    paths = _qualifying(g, u)
    tip = paths[0][-1]
    add, remove = [], []
    for p in paths[1:]:
        if len(p) >= 2:
            remove.append((p[0], p[1]))
            add.append((tip, p[1]))
    return g.with_edges(add=add, remove=remove)


def tr2(g: Graph, d: Iterable[int], u: int) -> Graph:
    """Move every shorter pendant path at ``u`` whole onto the end of the longest one."""
    if u in set(d):
        raise GraphError("tr2 needs u outside d")
    paths = _qualifying(g, u)
    tip = paths[0][-1]
    remove = [(u, p[0]) for p in paths[1:]]
    add = [(tip, p[0]) for p in paths[1:]]
    return g.with_edges(add=add, remove=remove)


@dataclass(frozen=True)
class DiamondResult:
    graph: Graph
    steps: int
    gamma: int


def _sweep(g: Graph, d: set, in_d: bool, op):
    # a move that returns an isomorphic tree (tr2 on a spider re-centres it)
    # counts as no change, otherwise the sweep can cycle
    changed = 0
    for u in range(g.n):
        if (u in d) != in_d or len(g.adj[u]) < 3:
            continue
        if len(pendant_paths(g, u)) < 2:
            continue
        nxt = op(g, d, u)
        if nxt.adj != g.adj and canonical_code(nxt) != canonical_code(g):
            g = nxt
            changed += 1
    return g, changed


def diamond_reduce(g: Graph, d: Iterable[int]) -> DiamondResult:
    """Apply tr2 sweeps (vertices outside d) then tr1 sweeps (vertices in d) to a fixed point."""
    if not is_tree(g):
        raise GraphError("diamond_reduce needs a tree")
    d = set(d)
    cap = max(1, g.n * g.n)
    steps = 0
    while True:
        g, c2 = _sweep(g, d, False, tr2)
        g, c1 = _sweep(g, d, True, tr1)
        steps += c1 + c2
        if c1 + c2 == 0:
            break
        if steps > cap:
            raise GraphError("diamond_reduce did not settle")
    return DiamondResult(g, steps, domination_number(g).gamma)


# -- pendant balancing ---------------------------------------------------------

def _leaves_at(g: Graph, u: int) -> list[int]:
    return sorted((x for x in g.adj[u] if len(g.adj[x]) == 1), reverse=True)


def split_base(g: Graph, u: int, v: int, a: int, b: int) -> Graph:
    """Remove ``a`` pendant leaves at ``u`` and ``b`` at ``v`` (highest ids first)."""
    lu, lv = _leaves_at(g, u), _leaves_at(g, v)
    if len(lu) < a or len(lv) < b:
        raise GraphError("not enough pendant edges at u or v")
    gone = set(lu[:a]) | set(lv[:b])
    return g.induced([x for x in range(g.n) if x not in gone])[0]


def _symmetric(base: Graph, u: int, v: int) -> bool:
    keep_u = [x for x in range(base.n) if x != u]
    keep_v = [x for x in range(base.n) if x != v]
    return canonical_code(base.induced(keep_u)[0]) == canonical_code(base.induced(keep_v)[0])


def balance_pendants(g: Graph, u: int, v: int, a: int, b: int) -> Graph:
    """Move one of the ``a`` pendant edges at ``u`` over to ``v`` (no-op once a - b < 2).

    The base graph, ``g`` minus those ``a + b`` pendants, must satisfy
    ``base - u ~ base - v``.
    """
    if a < b or b < 0:
        raise GraphError("need a >= b >= 0")
    if u == v:
        raise GraphError("u and v must differ")
    base = split_base(g, u, v, a, b)
    # ids below both cut points survive unchanged only if pendants were appended last
    bu = u - sum(1 for x in _leaves_at(g, u)[:a] + _leaves_at(g, v)[:b] if x < u)
    bv = v - sum(1 for x in _leaves_at(g, u)[:a] + _leaves_at(g, v)[:b] if x < v)
    if not _symmetric(base, bu, bv):
        raise GraphError("base - u is not isomorphic to base - v")
    if a - b < 2:
        return g
    x = _leaves_at(g, u)[0]
    return g.with_edges(add=[(v, x)], remove=[(u, x)])
