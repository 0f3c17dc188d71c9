"""Named tree families and the closed-form polynomials attached to them.

Vertex id layouts (frozen; tests address named vertices through them):

* ``star(n)``: centre 0, leaves 1..n-1.
* ``path(n)``: 0-1-...-(n-1).
* ``h_graph(a, b)``: spine v1..v4 = 0..3, then ``a`` pendants on v1, then ``b`` on v4.
* ``g1_graph(a, b, c)``: v1..v6 = 0..5, path v1 v4 v5 v6 v3, edge v5 v2, then
  pendants: ``a`` on v1, ``b`` on v2, ``c`` on v3.
* ``g2_graph(a, b, c)``: v1..v7 = 0..6, path v1 v4 v5 v2 v6 v7 v3, then
  pendants: ``a`` on v1, ``b`` on v2, ``c`` on v3.
* ``w_graph(n)``: path 0..n-5, pendants n-4, n-3 on 0 and n-2, n-1 on n-5.
* ``corona(h1, h2)``: h1 keeps its ids; copy i of h2 follows, in order of i.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .canon import canonical_code, tree_centres
from .exactpoly import IntPoly
from .graph import Graph, GraphError, bfs_distances, build_graph

V1, V2, V3 = 0, 1, 2

FAMILIES = ("star", "path", "h", "g1", "g2", "w", "corona", "h_prime", "p_half_corona")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...]

    @classmethod
    def parse(cls, family: str, params: str | Sequence[int]) -> FamilySpec:
        if isinstance(params, str):
            try:
                params = tuple(int(p) for p in params.split(",") if p.strip())
            except ValueError as exc:
                raise GraphError(f"bad params {params!r}") from exc
        return cls(family, tuple(params))


def _need(cond: bool, msg: str):
    if not cond:
        raise GraphError(msg)


def star(n: int) -> Graph:
    _need(n >= 1, "star needs n >= 1")
    return build_graph(n, [(0, i) for i in range(1, n)])


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def _pendants(edges: list, start: int, groups: Sequence[tuple[int, int]]) -> int:
    nxt = start
    for host, count in groups:
        for _ in range(count):
            edges.append((host, nxt))
            nxt += 1
    return nxt


def h_graph(a: int, b: int) -> Graph:
    """P4 with ``a`` pendants on its first vertex and ``b`` on its last."""
    _need(a >= 0 and b >= 0, "pendant counts must be non-negative")
    edges = [(0, 1), (1, 2), (2, 3)]
    n = _pendants(edges, 4, [(0, a), (3, b)])
    return build_graph(n, edges)


def h(n: int) -> Graph:
    """The balanced member, floor(n/2)-2 and ceil(n/2)-2 pendants."""
    _need(n >= 4, "h needs n >= 4")
    return h_graph(n // 2 - 2, (n + 1) // 2 - 2)


def g1_graph(a: int, b: int, c: int) -> Graph:
    _need(a >= 1 and c >= 1 and b >= 0, "g1 needs a, c >= 1 and b >= 0")
    edges = [(0, 3), (3, 4), (4, 5), (5, 2), (4, 1)]
    n = _pendants(edges, 6, [(0, a), (1, b), (2, c)])
    return build_graph(n, edges)


def g2_graph(a: int, b: int, c: int) -> Graph:
    _need(a >= 1 and c >= 1 and b >= 0, "g2 needs a, c >= 1 and b >= 0")
    edges = [(0, 3), (3, 4), (4, 1), (1, 5), (5, 6), (6, 2)]
    n = _pendants(edges, 7, [(0, a), (1, b), (2, c)])
    return build_graph(n, edges)


def w_graph(n: int) -> Graph:
    """Path on n-4 vertices with two pendants on each end; rho is exactly 2."""
    _need(n >= 6, "w needs n >= 6")
    k = n - 4
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(0, k), (0, k + 1), (k - 1, k + 2), (k - 1, k + 3)]
    return build_graph(n, edges)


def corona(h1: Graph, h2: Graph) -> Graph:
    n1, n2 = h1.n, h2.n
    edges = list(h1.edges())
    for i in range(n1):
        base = n1 + i * n2
        edges += [(base + u, base + v) for u, v in h2.edges()]
        edges += [(i, base + u) for u in range(n2)]
    return build_graph(n1 * (1 + n2), edges)


def p_half_corona(n: int) -> Graph:
    _need(n >= 2 and n % 2 == 0, "p_half_corona needs even n >= 2")
    return corona(path(n // 2), path(1))


def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    return g.with_edges(add=[(u, g.n), (g.n, v)], remove=[(u, v)], extra_vertices=1)


def pendant_edge_subdivisions(n: int) -> list[tuple[str, Graph]]:
    """Every non-isomorphic tree from subdividing one pendant edge of P_k o K1, k = n // 2.

    Each entry is labelled by the spine position of the subdivided pendant.
    The first entry is the end-of-diameter reading used by :func:`h_prime`.
    """
    _need(n % 2 == 1 and n >= 5, "needs odd n >= 5")
    k = n // 2
    base = corona(path(k), path(1))
    seen, out = set(), []
    for i in range(k):
        t = subdivide_edge(base, i, k + i)
        code = canonical_code(t)
        if code not in seen:
            seen.add(code)
            out.append((f"spine-{i}", t))
    return out


def h_prime(n: int) -> Graph:
    """P_{n//2} o K1 with the pendant edge at one end of a longest path subdivided.

    The longest paths of the corona run pendant-to-pendant through the whole
    spine, so their end edges are the pendants at the two spine ends; both give
    the same tree up to isomorphism.
    """
    _need(n % 2 == 1 and n >= 5, "h_prime needs odd n >= 5")
    k = n // 2
    base = corona(path(k), path(1))
    options = [subdivide_edge(base, 0, k), subdivide_edge(base, k - 1, 2 * k - 1)]
    return min(options, key=canonical_code)


def make(query: FamilySpec) -> Graph:
    f, p = query.family, query.params

    def arity(k):
        _need(len(p) == k, f"{f} takes {k} parameter(s), got {len(p)}")

    if f == "star":
        arity(1)
        return star(p[0])
    if f == "path":
        arity(1)
        return path(p[0])
    if f == "h":
        if len(p) == 2:
            return h_graph(*p)
        arity(1)
        return h(p[0])
    if f == "g1":
        arity(3)
        return g1_graph(*p)
    if f == "g2":
        arity(3)
        return g2_graph(*p)
    if f == "w":
        arity(1)
        return w_graph(p[0])
    if f == "h_prime":
        arity(1)
        return h_prime(p[0])
    if f == "p_half_corona":
        arity(1)
        return p_half_corona(p[0])
    if f == "corona":
        # corona of two paths: params (n1, n2)
        arity(2)
        return corona(path(p[0]), path(p[1]))
    raise GraphError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")


def is_corona_of_k1(t: Graph) -> Graph | None:
    """If ``t`` is H o K1 return H (relabelled 0..k-1), else None.

    Every vertex must be a leaf matched to a unique support vertex or a
    support vertex with exactly one leaf, and the supports must be half of V.
    """
    if t.n % 2 or t.n == 0:
        return None
    if t.n == 2:
        return path(1) if t.m == 1 else None
    partner = {}
    for v in range(t.n):
        if len(t.adj[v]) == 1:
            s = next(iter(t.adj[v]))
            if s in partner or len(t.adj[s]) == 1:
                return None
            partner[s] = v
    if 2 * len(partner) != t.n:
        return None
    core = sorted(partner)
    return t.induced(core)[0]


# -- polynomials in mu = lambda^2 -------------------------------------------

def _poly(*coeffs_high_to_low: int) -> IntPoly:
    return IntPoly(list(reversed(coeffs_high_to_low)))


def f_domain(which: int, a: int, n: int) -> bool:
    if which == 1:
        return a >= 1 and n >= 2 * a + 7
    if which in (2, 3):
        return a >= 2 and n >= 2 * a + (6 if which == 2 else 5)
    raise GraphError(f"which must be 1, 2 or 3, got {which}")


def f_graph(which: int, a: int, n: int) -> Graph:
    """The tree whose characteristic polynomial is lambda^(n-10) f_which(lambda^2)."""
    if not f_domain(which, a, n):
        raise GraphError(f"(a, n) = ({a}, {n}) outside the domain of f{which}")
    if which == 1:
        return g2_graph(a, n - 2 * a - 7, a)
    if which == 2:
        return g2_graph(a, n - 2 * a - 6, a - 1)
    return g2_graph(a - 1, n - 2 * a - 5, a - 1)


def f_poly(which: int, a: int, n: int) -> IntPoly:
    if not f_domain(which, a, n):
        raise GraphError(f"(a, n) = ({a}, {n}) outside the domain of f{which}")
    return _f_formula(which, a, n)


def _f_formula(which: int, a: int, n: int) -> IntPoly:
    # no domain check: the difference polynomials are identities in (a, n)
    if which == 1:
        return (_poly(1, -(2 + a), a)
                * _poly(1, a - n + 3, 2 * n - 8 * a + a * n - 2 * a * a - 12, 7 * a - a * n + 2 * a * a))
    if which == 2:
        return _poly(
            1,
            1 - n,
            3 * n - 9 * a + 2 * a * n - 3 * a * a - 13,
            24 * a - n - 5 * a * n - a * a * n + 12 * a * a + 2 * a ** 3 + 8,
            2 * a * n - 2 * n - 9 * a + 2 * a * a * n - 13 * a * a - 4 * a ** 3 + 11,
            a * n - 6 * a - a * a * n + 4 * a * a + 2 * a ** 3,
        )
    return (_poly(1, -(a + 1), a - 1)
            * _poly(1, a - n + 2, n - 4 * a + a * n - 2 * a * a - 6, (a - 1) * (2 * a - n + 5)))


def f_charpoly(which: int, a: int, n: int) -> IntPoly:
    """lambda^(n-10) * f_which(lambda^2, n); needs n >= 10."""
    _need(n >= 10, "the lambda^(n-10) form needs n >= 10")
    return f_poly(which, a, n).compose_square() * IntPoly.monomial(n - 10)


def f1_expanded(a: int, n: int) -> IntPoly:
    """The expanded quintic of f1 with every coefficient written out."""
    return _poly(
        1,
        a - n + 3 - (2 + a),
        2 * n - 8 * a + a * n - 2 * a * a - 12 - (2 + a) * (a - n + 3) + a,
        7 * a - a * n + 2 * a * a - (2 + a) * (2 * n - 8 * a + a * n - 2 * a * a - 12) + a * (a - n + 3),
        a * (2 * n - 8 * a + a * n - 2 * a * a - 12) - (2 + a) * (7 * a - a * n + 2 * a * a),
        a * (7 * a - a * n + 2 * a * a),
    )


@dataclass(frozen=True)
class DifferencePolys:
    a: int
    n: int
    psi: dict  # k -> IntPoly, keys 1..4
    psi_factored: dict  # k -> IntPoly from the factored display
    phi: IntPoly
    phi_factored: IntPoly
    roots: dict  # label -> float


def difference_polynomials(a: int, n: int) -> DifferencePolys:
    """psi_1..psi_4 (at their fixed n = 3a+2..3a+5), phi(mu, n) = f1 - f3, and closed-form roots."""
    _need(a >= 1 and n >= 1, "difference polynomials need a >= 1 and n >= 1")
    m1 = _poly(1, -1)
    psi = {
        1: _f_formula(2, a, 3 * a + 2) - _f_formula(3, a, 3 * a + 2),
        2: _f_formula(2, a, 3 * a + 3) - _f_formula(3, a, 3 * a + 3),
        3: _f_formula(2, a, 3 * a + 4) - _f_formula(1, a, 3 * a + 4),
        4: _f_formula(2, a, 3 * a + 5) - _f_formula(1, a, 3 * a + 5),
    }
    psi_factored = {
        1: m1 * _poly(-2, 3 + 2 * a, 3 - 3 * a),
        2: m1 * _poly(-1, 2 + a, 2 - 2 * a),
        3: m1 * _poly(1, -3 - a, 2 * a),
        4: m1 * _poly(-1, a),
    }
    phi = _f_formula(1, a, n) - _f_formula(3, a, n)
    phi_factored = m1 * _poly(6 * a - 2 * n + 9,
                              3 * n - 18 * a + 2 * a * n - 6 * a * a - 16,
                              8 * a + n - 2 * a * n + 6 * a * a - 5) * -1
    roots = {
        "mu_1_2": (2 + a + math.sqrt(a * a + 4)) / 2,
        "mu_1_4": (2 + a - math.sqrt(a * a + 4)) / 2,
        "mu_3_2": (a + 1 + math.sqrt(a * a - 2 * a + 5)) / 2,
        "mu_3_4": (a + 1 - math.sqrt(a * a - 2 * a + 5)) / 2,
        "psi1_hi": (2 * a + 3 + math.sqrt(4 * a * a - 12 * a + 33)) / 4,
        "psi1_lo": (2 * a + 3 - math.sqrt(4 * a * a - 12 * a + 33)) / 4,
        "psi2_hi": (a + 2 + math.sqrt(a * a - 4 * a + 12)) / 2,
        "psi2_lo": (a + 2 - math.sqrt(a * a - 4 * a + 12)) / 2,
        "psi3_hi": (a + 3 + math.sqrt(a * a - 2 * a + 9)) / 2,
        "psi3_lo": (a + 3 - math.sqrt(a * a - 2 * a + 9)) / 2,
        "psi4": float(a),
        "one": 1.0,
    }
    lead = 6 * a - 2 * n + 9
    if lead:
        lin = 18 * a - 3 * n - 2 * a * n + 6 * a * a + 16
        const = 8 * a + n - 2 * a * n + 6 * a * a - 5
        disc = lin * lin - 4 * lead * const
        if disc >= 0:
            roots["phi_bar_1"] = (lin + math.sqrt(disc)) / (2 * lead)
            roots["phi_bar_2"] = (lin - math.sqrt(disc)) / (2 * lead)
    roots["phi_bar_3"] = 1.0
    return DifferencePolys(a, n, psi, psi_factored, phi, phi_factored, roots)


def gamma3_winner_params(n: int) -> tuple[int, int, int]:
    """G2 parameters of the gamma = 3 minimiser for n = 3m, 3m+1, 3m+2 (n >= 11)."""
    _need(n >= 11, "gamma = 3 minimiser is stated for n >= 11")
    m, r = divmod(n, 3)
    if r == 0:
        return (m - 2, m - 3, m - 2)
    if r == 1:
        return (m - 1, m - 4, m - 1)
    return (m - 1, m - 3, m - 1)


def diameter_ends(t: Graph) -> tuple[int, int]:
    d0 = bfs_distances(t, tree_centres(t)[0])
    u = max(range(t.n), key=lambda v: (d0[v], -v))
    du = bfs_distances(t, u)
    v = max(range(t.n), key=lambda w: (du[w], -w))
    return u, v
