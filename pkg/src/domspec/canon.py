"""Canonical forms for small graphs.

General graphs use individualisation-refinement: equitable refinement of an
ordered partition, depth-first search over individualised vertices, the
lexicographically largest relabelled adjacency as the certificate, and
pruning by the automorphisms discovered along the way.  Trees use the
centre-rooted AHU encoding, which is exact and much faster.
"""
from __future__ import annotations

from typing import Sequence

from .graph import Graph, GraphError, is_tree

CANON_MAX_N = 20

CanonicalCode = bytes


def _refine(cells: list[list[int]], masks: Sequence[int]) -> list[list[int]]:
    while True:
        cell_masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                mv = masks[v]
                key = tuple((mv & cm).bit_count() for cm in cell_masks)
                groups.setdefault(key, []).append(v)
            if len(groups) > 1:
                changed = True
                for key in sorted(groups):
                    out.append(groups[key])
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def _relabelled_rows(masks: Sequence[int], lab: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    rows = []
    for v in lab:
        m = masks[v]
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        rows.append(r)
    return tuple(rows)


def _orbits(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, masks: Sequence[int]):
        self.masks = masks
        self.n = len(masks)
        self.first_code = None
        self.first_lab: list[int] = []
        self.first_seq: list[int] = []
        self.best_code = None
        self.best_lab: list[int] = []
        self.autos: list[list[int]] = []
        self.diverge = 0

    def _perm(self, lab_a, lab_b) -> list[int]:
        g = [0] * self.n
        for a, b in zip(lab_a, lab_b):
            g[a] = b
        return g

    def _leaf(self, cells, prefix):
        lab = [c[0] for c in cells]
        code = _relabelled_rows(self.masks, lab)
        if self.first_code is None:
            self.first_code = self.best_code = code
            self.first_lab = self.best_lab = lab
            self.first_seq = list(prefix)
            return None
        if code == self.first_code:
            g = self._perm(self.first_lab, lab)
            self.autos.append(g)
            d = self.diverge
            if (all(g[p] == p for p in self.first_seq[:d])
                    and g[self.first_seq[d]] == prefix[d]):
                # the whole branch is the image of the first-path branch
                return d
            return None
        if code == self.best_code:
            self.autos.append(self._perm(self.best_lab, lab))
        elif code > self.best_code:
            self.best_code, self.best_lab = code, lab
        return None

    def node(self, cells, prefix, on_first):
        """Explore a node; returns the depth to abort back to, or None."""
        cells = _refine(cells, self.masks)
        if len(cells) == self.n:
            return self._leaf(cells, prefix)
        depth = len(prefix)
        ti = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[ti]
        explored: list[int] = []
        for k, v in enumerate(target):
            if explored:
                fixing = [g for g in self.autos if all(g[p] == p for p in prefix)]
                if fixing:
                    orb = _orbits(self.n, fixing)
                    if any(orb[v] == orb[w] for w in explored):
                        continue
            explored.append(v)
            if on_first and k > 0:
                self.diverge = depth
            child = cells[:ti] + [[v], [w for w in target if w != v]] + cells[ti + 1:]
            back = self.node(child, prefix + [v], on_first and k == 0)
            if back is not None and back < depth:
                return back
        return None


def canonical_labeling(masks: Sequence[int], cells: list[list[int]] | None = None):
    """Return ``(certificate, labeling, automorphism_generators)``.

    ``labeling[i]`` is the vertex placed at canonical position ``i``; the
    certificate is the tuple of relabelled adjacency rows.  ``cells`` is an
    optional ordered initial colouring.
    """
    n = len(masks)
    if n == 0:
        return (), [], []
    s = _Search(masks)
    s.node([list(c) for c in cells] if cells else [list(range(n))], [], True)
    return s.best_code, s.best_lab, s.autos


def automorphism_orbits(masks: Sequence[int]) -> list[int]:
    _, _, gens = canonical_labeling(masks)
    return _orbits(len(masks), gens)


# -- trees -----------------------------------------------------------------

def tree_centres(g: Graph) -> list[int]:
    if g.n <= 2:
        return list(range(g.n))
    deg = g.degrees()
    layer = [v for v in range(g.n) if deg[v] <= 1]
    remaining = g.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in g.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_code(g: Graph, root: int, banned: int = -1) -> str:
    """AHU parenthesis code of the subtree hanging from ``root``."""
    order, parent = [root], {root: banned}
    for v in order:
        for w in g.adj[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    codes: dict[int, list[str]] = {v: [] for v in order}
    out = {}
    for v in reversed(order):
        out[v] = "(" + "".join(sorted(codes[v])) + ")"
        if v != root:
            codes[parent[v]].append(out[v])
    return out[root]


def tree_code(g: Graph) -> CanonicalCode:
    centres = tree_centres(g)
    if len(centres) == 1:
        body = rooted_code(g, centres[0])
    else:
        a, b = centres
        body = "".join(sorted((rooted_code(g, a, b), rooted_code(g, b, a))))
    return b"T" + body.encode()


def canonical_code(g: Graph) -> CanonicalCode:
    """Isomorphism-invariant byte code (trees of any size; other graphs n <= 20)."""
    if g.n >= 1 and is_tree(g):
        return tree_code(g)
    if g.n > CANON_MAX_N:
        raise GraphError(f"canonical code capped at n={CANON_MAX_N}, got n={g.n}")
    rows, _, _ = canonical_labeling(g.masks)
    return b"G" + bytes([g.n]) + b"".join(r.to_bytes(3, "big") for r in rows)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_code(g) == canonical_code(h)
