"""Spectral radius, Perron vectors and exact characteristic polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .canon import tree_centres
from .exactpoly import IntPoly, Ordering, compare_largest_roots
from .graph import Graph, GraphError, is_connected, is_tree

CHARPOLY_MAX_N = 40


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray
    iterations: int
    residual: float


def spectral_radius(g: Graph, tol: float = 1e-12, max_iter: int = 10**6) -> SpectralResult:
    """Largest adjacency eigenvalue and unit Perron vector by power iteration.

    Iterates with ``A + I``: trees are bipartite, so ``A`` alone has ``-rho``
    in its spectrum and the plain iteration never settles.  Stops once the
    residual ``||A x - rho x||_inf`` is at most ``tol``.
    """
    if not is_connected(g):
        raise GraphError("spectral_radius needs a connected graph")
    n = g.n
    if n == 0:
        raise GraphError("empty graph")
    if n == 1:
        return SpectralResult(0.0, np.ones(1), 0, 0.0)
    a = g.adjacency_matrix()
    x = np.full(n, 1.0 / math.sqrt(n))
    ax = a @ x
    rho = float(x @ ax)
    residual = float(np.max(np.abs(ax - rho * x)))
    it = 0
    while residual > tol:
        it += 1
        if it > max_iter:
            raise ConvergenceError(f"no convergence after {max_iter} iterations (residual {residual:.3e})")
        y = ax + x
        x = y / np.linalg.norm(y)
        ax = a @ x
        rho = float(x @ ax)
        residual = float(np.max(np.abs(ax - rho * x)))
    return SpectralResult(rho, x, it, residual)


def rho_float(g: Graph) -> float:
    """Dense symmetric eigensolver value; used for bulk screening, not certificates."""
    if g.n == 1:
        return 0.0
    return float(np.linalg.eigvalsh(g.adjacency_matrix())[-1])


# -- characteristic polynomials ---------------------------------------------

def char_poly_general(g: Graph) -> IntPoly:
    """det(xI - A) by Faddeev-LeVerrier in exact integer arithmetic.

    ``M_k = A M_{k-1} + c_{n-k+1} I`` and ``c_{n-k} = -tr(A M_k) / k``; the
    divisions are exact for integer matrices.  ``A`` is applied through the
    adjacency lists, so each step costs O(n^2 * avg degree).
    """
    n = g.n
    if n > CHARPOLY_MAX_N:
        raise GraphError(f"char_poly_general capped at n={CHARPOLY_MAX_N}")
    nbrs = [sorted(g.adj[i]) for i in range(n)]
    c = [0] * (n + 1)
    c[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        new = []
        for i in range(n):
            row = [0] * n
            for j in nbrs[i]:
                mj = m[j]
                for t in range(n):
                    row[t] += mj[t]
            row[i] += c[n - k + 1]
            new.append(row)
        m = new
        tr = 0
        for i in range(n):
            for j in nbrs[i]:
                tr += m[j][i]
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c[n - k] = q
    return IntPoly(c)


_X = IntPoly.x()


def _rooted_pair(g: Graph, root: int, banned: int, memo: dict) -> tuple[IntPoly, IntPoly]:
    """(Phi(T_v), Phi(T_v - v)) for the subtree at ``root`` away from ``banned``."""
    order, parent = [root], {root: banned}
    for v in order:
        for w in g.adj[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    kids: dict[int, list[int]] = {v: [] for v in order}
    for v in order[1:]:
        kids[parent[v]].append(v)
    codes: dict[int, str] = {}
    pairs: dict[int, tuple[IntPoly, IntPoly]] = {}
    for v in reversed(order):
        code = "(" + "".join(sorted(codes[c] for c in kids[v])) + ")"
        codes[v] = code
        hit = memo.get(code)
        if hit is None:
            child = [pairs[c] for c in kids[v]]
            without = IntPoly([1])
            for full, _ in child:
                without = without * full
            # vertex-deletion recurrence at v:
            # Phi(T) = x Phi(T-v) - sum_c Phi(T_c - c) prod_{c' != c} Phi(T_c')
            total = _X * without
            for i, (_, cut) in enumerate(child):
                term = cut
                for j, (full, _) in enumerate(child):
                    if j != i:
                        term = term * full
                total = total - term
            hit = (total, without)
            memo[code] = hit
        pairs[v] = hit
    return pairs[root]


def char_poly_tree(t: Graph, memo: dict | None = None) -> IntPoly:
    """Characteristic polynomial of a tree by the edge-split / vertex-deletion recurrences.

    With a single centre the vertex recurrence is applied there; with two
    centres the tree is split at the central edge ``uv``:
    ``Phi(T) = Phi(A) Phi(B) - Phi(A - u) Phi(B - v)``.  Rooted subtrees are
    memoised on their AHU codes (pass ``memo`` to share it across calls).
    """
    if not is_tree(t):
        raise GraphError("char_poly_tree needs a tree")
    memo = {} if memo is None else memo
    centres = tree_centres(t)
    if len(centres) == 1:
        return _rooted_pair(t, centres[0], -1, memo)[0]
    u, v = centres
    a, a_cut = _rooted_pair(t, u, v, memo)
    b, b_cut = _rooted_pair(t, v, u, memo)
    return a * b - a_cut * b_cut


def char_poly(g: Graph, memo: dict | None = None) -> IntPoly:
    if g.n >= 1 and is_tree(g):
        return char_poly_tree(g, memo)
    return char_poly_general(g)


def compare_rho_exact(g1: Graph, g2: Graph) -> Ordering:
    """Exact ordering of rho(g1) and rho(g2) from their characteristic polynomials."""
    for g in (g1, g2):
        if not is_connected(g):
            raise GraphError("compare_rho_exact needs connected graphs")
    return compare_largest_roots(char_poly(g1), char_poly(g2))


def equal_rho_kind(g1: Graph, g2: Graph) -> str:
    """Why two graphs of equal spectral radius tie: isomorphic or cospectral at the top."""
    from .canon import canonical_code

    if g1.n == g2.n and canonical_code(g1) == canonical_code(g2):
        return "isomorphic"
    return "cospectral-at-top"


# -- closed forms ------------------------------------------------------------

def perron_ratio_g2(a: int, n: int) -> tuple[float, float]:
    """x_{v1}/x_{v2} on G2(a, n-2a-7, a): closed form at rho vs. the Perron vector."""
    from .families import V1, V2, g2_graph

    if a < 1 or n - 2 * a - 7 < 0 or n < 11:
        raise ValueError(f"need a >= 1, n >= 2a+7, n >= 11; got a={a}, n={n}")
    res = spectral_radius(g2_graph(a, n - 2 * a - 7, a))
    r = res.rho
    closed = (0.5 * (r * r - (n - 2 * a - 7)) * (r + 1) - r) / ((r * r - a) * (r + 1) - r)
    numeric = float(res.perron[V1] / res.perron[V2])
    return closed, numeric


def corona_lift(sigma1: float) -> float:
    """Top root of lambda^2 - sigma1*lambda - 1, i.e. rho(H o K1) from rho(H)."""
    if sigma1 < 0:
        raise ValueError("sigma1 must be non-negative")
    return (sigma1 + math.sqrt(sigma1 * sigma1 + 4)) / 2


def corona_charpoly(phi_h: IntPoly) -> IntPoly:
    """lambda^k * Phi(H, lambda - 1/lambda) with k = deg Phi(H), cleared of denominators."""
    k = phi_h.degree
    sq = IntPoly([-1, 0, 1])
    out = IntPoly()
    for i, c in enumerate(phi_h.coeffs):
        if c:
            out = out + (sq ** i) * IntPoly.monomial(k - i, c)
    return out
