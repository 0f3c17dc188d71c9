"""Exhaustive minimiser search with exact certificates, and the claim checkers built on it."""
from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .canon import canonical_code
from .domination import all_minimum_dominating_sets, domination_number, min_pairwise_distance
from .enumeration import ClassQuery, sweep
from .exactpoly import IntPoly, Ordering, RootInterval, compare_largest_roots, isolate_largest_root
from .families import (
    corona, difference_polynomials, f_charpoly, f_domain, f_graph, g2_graph,
    gamma3_winner_params, h, h_prime, is_corona_of_k1, p_half_corona, path,
    pendant_edge_subdivisions, star, w_graph,
)
from .graph import Graph, GraphError, build_graph, emit_graph6, is_tree
from .spectral import (
    char_poly, char_poly_general, char_poly_tree, compare_rho_exact, corona_charpoly,
    corona_lift, perron_ratio_g2, spectral_radius,
)
from .transforms import (
    balance_pendants, internal_paths, shift_edges, slide_path, subdivide,
)

SCHEMA_VERSION = 1
PREFILTER = 1e-6
RAYLEIGH_SCALE = 1 << 20


@dataclass
class MinimizerReport:
    n: int
    gamma: int
    trees_only: bool
    class_size: int
    winners: list[bytes]
    winner_graphs: list[Graph]
    rho_interval: RootInterval
    runner_up_gap: Fraction | None
    survivors: int
    rayleigh_certified: int
    exact_fallbacks: int = 0
    winner_kind: str = "unique"

    @property
    def unique(self) -> bool:
        return len(self.winners) == 1

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "gamma": self.gamma,
            "trees_only": self.trees_only,
            "class_size": self.class_size,
            "winners": [emit_graph6(g) for g in self.winner_graphs],
            "winner_kind": self.winner_kind,
            "rho_lo": str(self.rho_interval.lo),
            "rho_hi": str(self.rho_interval.hi),
            "rho": self.rho_interval.mid,
            "runner_up_gap": None if self.runner_up_gap is None else str(self.runner_up_gap),
            "survivors": self.survivors,
            "rayleigh_certified": self.rayleigh_certified,
            "exact_fallbacks": self.exact_fallbacks,
        }


@dataclass
class VerificationReport:
    claim_id: str
    parameter_range: str
    status: str = "confirmed"  # confirmed | refuted | exception
    evidence: list = field(default_factory=list)
    exceptions: list = field(default_factory=list)
    winners: list = field(default_factory=list)
    rho_lo: str | None = None
    rho_hi: str | None = None
    strict: bool = True  # False for reports that record an outcome without asserting it

    def fail(self, note: dict) -> None:
        self.status = "refuted"
        self.exceptions.append(note)

    @property
    def ok(self) -> bool:
        return self.status != "refuted"

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "claim_id": self.claim_id,
            "range": self.parameter_range,
            "status": self.status,
            "strict": self.strict,
            "winners": self.winners,
            "rho_lo": self.rho_lo,
            "rho_hi": self.rho_hi,
            "evidence": self.evidence,
            "exceptions": self.exceptions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)


# -- minimiser search -----------------------------------------------------------

def _interval_above(p: IntPoly, bound: Fraction) -> Fraction:
    """A rational lower bound on the top root of ``p`` that exceeds ``bound``."""
    iv = isolate_largest_root(p)
    while iv.lo <= bound:
        iv = iv.refine(iv.width / 16)
    return iv.lo


def _rayleigh(table, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Integer numerators and denominators of x'Ax / x'x for rounded Perron vectors."""
    x = np.rint(table.perron[idx] * RAYLEIGH_SCALE).astype(np.int64)
    nums = np.empty(len(idx), dtype=object)
    dens = np.empty(len(idx), dtype=object)
    for start in range(0, len(idx), 8192):
        sl = slice(start, start + 8192)
        a = table.adjacency(idx[sl])
        xs = x[sl]
        num = np.einsum("bi,bij,bj->b", xs, a, xs)
        den = np.einsum("bi,bi->b", xs, xs)
        nums[sl] = [int(v) for v in num]
        dens[sl] = [int(v) for v in den]
    return nums, dens


def find_minimizers(q: ClassQuery, exact: bool = True) -> MinimizerReport:
    """All minimum-rho members of the class, with a certificate that everyone else is larger.

    Candidates within ``PREFILTER`` of the floating minimum meet in an exact
    playoff on characteristic polynomials.  Every other member is shown larger
    by a rational Rayleigh quotient of its rounded Perron vector, which is a
    lower bound on its spectral radius, exceeding the winner's upper endpoint.
    """
    if q.gamma is None:
        raise GraphError("find_minimizers needs a gamma")
    t = sweep(q.n, q.trees_only)
    idx = np.nonzero(t.gamma == q.gamma)[0]
    if len(idx) == 0:
        raise GraphError(f"empty class n={q.n}, gamma={q.gamma}")
    rhos = t.rho[idx]
    r0 = float(rhos.min())
    near = rhos <= r0 + PREFILTER
    surv = [int(i) for i in idx[near]]
    graphs = {i: t.graph(i) for i in surv}
    memo: dict = {}
    polys = {i: char_poly(graphs[i], memo) for i in surv}
    if exact:
        best, tied, beaten = surv[0], [surv[0]], []
        for i in surv[1:]:
            c = compare_largest_roots(polys[i], polys[best])
            if c == Ordering.LESS:
                beaten += tied
                best, tied = i, [i]
            elif c == Ordering.EQUAL:
                tied.append(i)
            else:
                beaten.append(i)
    else:
        best = surv[int(np.argmin(t.rho[surv]))]
        tied = [i for i in surv if abs(t.rho[i] - t.rho[best]) < 1e-12]
        beaten = [i for i in surv if i not in tied]
    interval = isolate_largest_root(polys[best])
    hi = interval.hi
    lower_bounds: list[Fraction] = []
    if exact:
        for i in beaten:
            lower_bounds.append(_interval_above(polys[i], hi))
    rest = idx[~near]
    fallbacks = 0
    if len(rest):
        nums, dens = _rayleigh(t, rest)
        for k in range(len(rest)):
            num, den = nums[k], dens[k]
            if den and num * hi.denominator > hi.numerator * den:
                lower_bounds.append(Fraction(num, den))
                continue
            # rounding failed to separate: settle it exactly
            fallbacks += 1
            g = t.graph(int(rest[k]))
            p = char_poly(g, memo)
            c = compare_largest_roots(p, polys[best])
            if c == Ordering.LESS:
                raise AssertionError("prefilter discarded a smaller spectral radius")
            if c == Ordering.EQUAL:
                graphs[int(rest[k])] = g
                tied.append(int(rest[k]))
            else:
                lower_bounds.append(_interval_above(p, hi))
    tied.sort(key=lambda i: canonical_code(graphs[i]))
    gap = (min(lower_bounds) - hi) if lower_bounds else None
    return MinimizerReport(
        n=q.n, gamma=q.gamma, trees_only=q.trees_only, class_size=len(idx),
        winners=[canonical_code(graphs[i]) for i in tied],
        winner_graphs=[graphs[i] for i in tied],
        rho_interval=interval, runner_up_gap=gap,
        survivors=len(surv), rayleigh_certified=len(rest) - fallbacks,
        exact_fallbacks=fallbacks,
        winner_kind="unique" if len(tied) == 1 else "cospectral-at-top",
    )


def _attach(report: VerificationReport, mr: MinimizerReport) -> None:
    report.evidence.append(mr.to_dict())


def _certified(mr: MinimizerReport) -> bool:
    return mr.runner_up_gap is None or mr.runner_up_gap > 0


# -- theorem checks ---------------------------------------------------------------

def verify_minimizer_is_tree(n: int) -> VerificationReport:
    rep = VerificationReport("minimizer-is-tree", f"n={n}, every gamma, all connected graphs")
    for gamma in range(1, max(1, n // 2) + 1):
        try:
            mg = find_minimizers(ClassQuery(n, gamma, trees_only=False))
        except GraphError:
            continue
        _attach(rep, mg)
        trees = [is_tree(g) for g in mg.winner_graphs]
        if not all(trees) or not _certified(mg):
            rep.fail({"gamma": gamma, "winners": [emit_graph6(g) for g in mg.winner_graphs]})
            continue
        mt = find_minimizers(ClassQuery(n, gamma, trees_only=True))
        if mt.winners != mg.winners:
            rep.fail({"gamma": gamma, "reason": "tree and graph winners differ"})
    return rep


def expected_small_gamma_winner(n: int, gamma: int) -> Graph | None:
    """Star for gamma 1, balanced H for gamma 2, the path for gamma = ceil(n/3)."""
    if gamma == 1:
        return star(n)
    if gamma == 2 and n >= 4:
        return h(n)
    if gamma == -(-n // 3):
        return path(n)
    return None


def verify_small_gamma(n: int) -> VerificationReport:
    rep = VerificationReport("gamma-1-2-third", f"n={n}, trees, gamma in {{1, 2, ceil(n/3)}}")
    gammas = sorted({1, 2, -(-n // 3)})
    for gamma in gammas:
        want = expected_small_gamma_winner(n, gamma)
        if want is None or gamma > max(1, n // 2):
            continue
        mr = find_minimizers(ClassQuery(n, gamma, True))
        _attach(rep, mr)
        if not (mr.unique and _certified(mr) and mr.winners[0] == canonical_code(want)):
            rep.fail({"gamma": gamma, "winners": [emit_graph6(g) for g in mr.winner_graphs],
                      "expected": emit_graph6(want)})
    return rep


def verify_distance_three(n: int) -> VerificationReport:
    rep = VerificationReport("distance-three", f"n={n}, trees, 2 <= gamma < ceil(n/3)")
    for gamma in range(2, -(-n // 3)):
        mr = find_minimizers(ClassQuery(n, gamma, True))
        for g in mr.winner_graphs:
            dists = sorted({min_pairwise_distance(g, d) for d in all_minimum_dominating_sets(g, gamma)})
            rep.evidence.append({"gamma": gamma, "winner": emit_graph6(g),
                                 "min_distances_seen": [int(x) for x in dists]})
            if 3 not in dists:
                rep.fail({"gamma": gamma, "winner": emit_graph6(g), "seen": dists})
    return rep


def g2_valley(n: int) -> list[tuple[int, Graph]]:
    """(a, G2(a, n-2a-7, a)) for every valid a >= 1."""
    return [(a, g2_graph(a, n - 2 * a - 7, a)) for a in range(1, (n - 7) // 2 + 1)]


def expected_regime(a: int, n: int) -> Ordering:
    """Sign of rho(G2(a, n-2a-7, a)) - rho(G2(a-1, n-2a-5, a-1)) for a >= 2, n >= 2a+7."""
    return Ordering.GREATER if n <= 3 * a + 3 else Ordering.LESS


def regime_table(n: int) -> list[dict]:
    rows = []
    for a in range(2, (n - 7) // 2 + 1):
        g_a = g2_graph(a, n - 2 * a - 7, a)
        g_b = g2_graph(a - 1, n - 2 * a - 5, a - 1)
        got = compare_rho_exact(g_a, g_b)
        want = expected_regime(a, n)
        rows.append({"n": n, "a": a, "observed": got.name, "expected": want.name, "ok": got == want})
    return rows


def valley_minimum(n: int) -> int:
    """Value of a at which a -> rho(G2(a, n-2a-7, a)) is smallest (exact comparisons)."""
    members = g2_valley(n)
    best_a, best_g = members[0]
    for a, g in members[1:]:
        if compare_rho_exact(g, best_g) == Ordering.LESS:
            best_a, best_g = a, g
    return best_a


def verify_gamma3(n: int) -> VerificationReport:
    rep = VerificationReport("gamma-3", f"n={n}, trees")
    if not 11 <= n <= 18:
        raise GraphError("verify_gamma3 covers 11 <= n <= 18")
    params = gamma3_winner_params(n)
    want = g2_graph(*params)
    mr = find_minimizers(ClassQuery(n, 3, True))
    _attach(rep, mr)
    rep.winners = [emit_graph6(g) for g in mr.winner_graphs]
    rep.rho_lo, rep.rho_hi = str(mr.rho_interval.lo), str(mr.rho_interval.hi)
    if not (mr.unique and _certified(mr) and mr.winners[0] == canonical_code(want)):
        rep.fail({"reason": "winner mismatch", "expected": list(params)})
    rows = regime_table(n)
    rep.evidence.append({"regime": rows})
    if not all(r["ok"] for r in rows):
        rep.fail({"reason": "regime table", "rows": [r for r in rows if not r["ok"]]})
    a_min = valley_minimum(n)
    rep.evidence.append({"valley_minimum_a": a_min, "expected_a": params[0]})
    if a_min != params[0]:
        rep.fail({"reason": "valley minimum", "observed": a_min, "expected": params[0]})
    return rep


def verify_corona_even(n: int) -> VerificationReport:
    if n % 2 or not 2 <= n <= 16:
        raise GraphError("verify_corona_even needs even n in 2..16")
    rep = VerificationReport("corona-even", f"n={n}, trees, gamma=n/2")
    k = n // 2
    t = sweep(n, True)
    idx = np.nonzero(t.gamma == k)[0]
    cores = []
    for i in idx:
        core = is_corona_of_k1(t.graph(int(i)))
        if core is None:
            rep.fail({"reason": "not a corona", "graph": emit_graph6(t.graph(int(i)))})
        else:
            cores.append(core)
    # (a) the decomposition is a bijection onto trees with k vertices
    n_trees_k = sweep(k, True).size
    rep.evidence.append({"class_size": int(len(idx)), "trees_on_half": n_trees_k})
    if len(idx) != n_trees_k:
        rep.fail({"reason": "class size differs from tree count on n/2 vertices"})
    # (b) unique minimiser
    mr = find_minimizers(ClassQuery(n, k, True))
    _attach(rep, mr)
    rep.winners = [emit_graph6(g) for g in mr.winner_graphs]
    rep.rho_lo, rep.rho_hi = str(mr.rho_interval.lo), str(mr.rho_interval.hi)
    if not (mr.unique and _certified(mr) and mr.winners[0] == canonical_code(p_half_corona(n))):
        rep.fail({"reason": "winner is not the path corona"})
    # (c) lifting preserves the order of spectral radii
    if k >= 2:
        small = sweep(k, True)
        by_core = sorted(range(small.size), key=lambda i: small.rho[i])
        lifted = [corona(small.graph(i), path(1)) for i in by_core]
        for x, y in zip(by_core, by_core[1:]):
            lhs = compare_rho_exact(small.graph(x), small.graph(y))
            rhs = compare_rho_exact(lifted[by_core.index(x)], lifted[by_core.index(y)])
            if lhs != rhs:
                rep.fail({"reason": "lift reorders", "pair": [emit_graph6(small.graph(x)),
                                                              emit_graph6(small.graph(y))]})
    return rep


def check_conjecture_odd(n: int) -> VerificationReport:
    """Report the certified winner of the odd gamma = floor(n/2) class against the subdivided corona.

    This records the outcome; ``strict`` is False so a mismatch is not a failure.
    """
    if n % 2 == 0 or not 5 <= n <= 15:
        raise GraphError("check_conjecture_odd needs odd n in 5..15")
    rep = VerificationReport("conjecture-odd", f"n={n}, gamma={n // 2}", strict=False)
    gamma = n // 2
    mr = find_minimizers(ClassQuery(n, gamma, True))
    _attach(rep, mr)
    rep.winners = [emit_graph6(g) for g in mr.winner_graphs]
    rep.rho_lo, rep.rho_hi = str(mr.rho_interval.lo), str(mr.rho_interval.hi)
    hp = h_prime(n)
    readings = []
    for label, g in pendant_edge_subdivisions(n):
        readings.append({
            "reading": label,
            "graph6": emit_graph6(g),
            "gamma": domination_number(g).gamma,
            "rho": spectral_radius(g).rho,
            "is_winner": canonical_code(g) in mr.winners,
        })
    graph_winner = None
    if n <= 9:
        mg = find_minimizers(ClassQuery(n, gamma, False))
        _attach(rep, mg)
        graph_winner = mg.winners == mr.winners
    holds = mr.unique and mr.winners[0] == canonical_code(hp)
    rep.evidence.append({
        "h_prime": emit_graph6(hp),
        "h_prime_is_unique_winner": holds,
        "graph_winner_matches_tree_winner": graph_winner,
        "readings": readings,
        "certified": _certified(mr),
    })
    rep.status = "confirmed" if holds else "refuted"
    if not _certified(mr):
        rep.status = "exception"
        rep.exceptions.append({"reason": "uncertified report"})
    return rep


# -- lemma suites ------------------------------------------------------------------

def random_tree(rng: random.Random, n: int) -> Graph:
    return build_graph(n, [(i, rng.randrange(i)) for i in range(1, n)])


def random_connected(rng: random.Random, n: int, extra: float = 0.3) -> Graph:
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.add((u, v))
    return build_graph(n, edges)


def _graft_paths(base: Graph, v: int, s: int, t: int):
    """Attach pendant paths of lengths s and t at v; returns graph and both paths."""
    edges = list(base.edges())
    nxt = base.n
    paths = []
    for length in (s, t):
        prev, seq = v, []
        for _ in range(length):
            edges.append((prev, nxt))
            seq.append(nxt)
            prev = nxt
            nxt += 1
        paths.append(tuple(seq))
    return build_graph(nxt, edges), paths[0], paths[1]


def _trial_slide(rng):
    base = random_connected(rng, rng.randint(2, 7), 0.25)
    v = rng.randrange(base.n)
    t = rng.randint(1, 5)
    s = rng.randint(1, t)
    g, sp, tp = _graft_paths(base, v, s, t)
    out = slide_path(g, v, sp, tp)
    return g, out, Ordering.GREATER


def _trial_shift(rng):
    while True:
        g = random_connected(rng, rng.randint(4, 10), 0.25)
        u, v = rng.sample(range(g.n), 2)
        cand = sorted(g.adj[v] - g.adj[u] - {u})
        if not cand:
            continue
        x = spectral_radius(g).perron
        if abs(x[u] - x[v]) < 1e-9:
            continue
        if x[u] < x[v]:
            u, v = v, u
            cand = sorted(g.adj[v] - g.adj[u] - {u})
            if not cand:
                continue
        w = rng.sample(cand, rng.randint(1, len(cand)))
        out = shift_edges(g, u, v, w)
        return out, g, Ordering.GREATER  # the shifted graph has the larger radius


def _trial_subdivide(rng):
    w_codes = {}
    while True:
        g = random_connected(rng, rng.randint(4, 11), 0.15)
        ips = sorted(internal_paths(g), key=lambda p: p.vertices)
        if not ips:
            continue
        if g.n not in w_codes and g.n >= 6:
            w_codes[g.n] = canonical_code(w_graph(g.n))
        if g.n >= 6 and g.n <= 20 and canonical_code(g) == w_codes[g.n]:
            continue
        e = rng.choice(rng.choice(ips).edges())
        out = subdivide(g, e, rng.choice((1, 2)))
        return g, out, Ordering.GREATER


def _symmetric_base(rng):
    """Two copies of a random rooted tree joined root to root by a path."""
    k = rng.randint(1, 4)
    half = random_tree(rng, k)
    link = rng.randint(0, 2)
    edges = list(half.edges()) + [(u + k, v + k) for u, v in half.edges()]
    n = 2 * k
    prev = 0
    for _ in range(link):
        edges.append((prev, n))
        prev = n
        n += 1
    edges.append((prev, k))
    return build_graph(n, edges), 0, k


def _trial_balance(rng):
    base, u, v = _symmetric_base(rng)
    b = rng.randint(1, 3)
    a = rng.randint(b + 2, b + 5)
    edges = list(base.edges())
    n = base.n
    for host, cnt in ((u, a), (v, b)):
        for _ in range(cnt):
            edges.append((host, n))
            n += 1
    g = build_graph(n, edges)
    out = balance_pendants(g, u, v, a, b)
    return g, out, Ordering.GREATER


def _trial_subgraph(rng):
    g = random_connected(rng, rng.randint(3, 10), 0.35)
    edges = g.edges()
    rng.shuffle(edges)
    kept = []
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    rest = []
    for u, v in edges:
        if find(u) != find(v):
            parent[find(u)] = find(v)
            kept.append((u, v))
        else:
            rest.append((u, v))
    if not rest:
        return g, g, Ordering.EQUAL
    kept += rest[: rng.randrange(len(rest))]
    h = build_graph(g.n, kept)
    return g, h, Ordering.GREATER


LEMMAS: dict[str, Callable] = {
    "slide": _trial_slide,
    "shift": _trial_shift,
    "subdivision": _trial_subdivide,
    "balance": _trial_balance,
    "subgraph": _trial_subgraph,
}


def verify_lemma_suite(lemma_id: str, trials: int = 500, seed: int = 0) -> VerificationReport:
    """Random valid instances; every one must show the strict inequality exactly."""
    if lemma_id not in LEMMAS:
        raise GraphError(f"unknown lemma {lemma_id!r}; choose from {', '.join(LEMMAS)}")
    rep = VerificationReport(f"lemma-{lemma_id}", f"{trials} trials, seed {seed}")
    rng = random.Random(seed)
    trial = LEMMAS[lemma_id]
    for k in range(trials):
        big, small, want = trial(rng)
        got = compare_largest_roots(char_poly(big), char_poly(small))
        if got != want:
            rep.fail({"trial": k, "graph6": [emit_graph6(big), emit_graph6(small)],
                      "expected": want.name, "observed": got.name})
    rep.evidence.append({"trials": trials, "violations": len(rep.exceptions)})
    if lemma_id == "subdivision":
        for n in (6, 8, 10):
            g = w_graph(n)
            ip = sorted(internal_paths(g), key=lambda p: p.vertices)[0]
            before = spectral_radius(g).rho
            after = spectral_radius(subdivide(g, ip.edges()[0], 1)).rho
            rec = {"w_n": n, "rho_before": before, "rho_after": after,
                   "invariant": abs(before - 2) < 1e-9 and abs(after - 2) < 1e-9}
            rep.evidence.append(rec)
            if not rec["invariant"]:
                rep.fail(rec)
    return rep


# -- identities --------------------------------------------------------------------

def verify_identity_suite(max_n: int = 25) -> VerificationReport:
    rep = VerificationReport("identities", f"f-identities n<={max_n}, corona |H|<=8, ratio n<=20")
    count = 0
    memo: dict = {}
    for n in range(10, max_n + 1):
        for which in (1, 2, 3):
            for a in range(1, n):
                if not f_domain(which, a, n):
                    continue
                count += 1
                if f_charpoly(which, a, n) != char_poly_tree(f_graph(which, a, n), memo):
                    rep.fail({"f": which, "a": a, "n": n})
    rep.evidence.append({"f_identities": count})
    worst = 0.0
    for a in range(1, 9):
        for n in range(max(11, 2 * a + 7), max_n + 1):
            d = difference_polynomials(a, n)
            for k in d.psi:
                if d.psi[k] != d.psi_factored[k]:
                    rep.fail({"psi": k, "a": a})
            if d.phi != d.phi_factored:
                rep.fail({"phi": (a, n)})
            for label, root in d.roots.items():
                target = _root_owner(d, label)
                if target is not None:
                    val = abs(target.eval_float(root)) / max(1.0, abs(root)) ** target.degree
                    worst = max(worst, val)
                    if val > 1e-8:
                        rep.fail({"root": label, "a": a, "n": n, "residual": val})
    rep.evidence.append({"closed_form_root_worst_residual": worst})
    lift_err = 0.0
    for k in range(1, 9):
        for hh in (sweep(k, True).graph(i) for i in range(sweep(k, True).size)):
            cg = corona(hh, path(1))
            if corona_charpoly(char_poly_general(hh)) != char_poly_general(cg):
                rep.fail({"corona_identity": emit_graph6(hh)})
            lift_err = max(lift_err, abs(corona_lift(spectral_radius(hh).rho) - spectral_radius(cg).rho))
    rep.evidence.append({"corona_lift_worst": lift_err})
    if lift_err > 1e-9:
        rep.fail({"corona_lift_worst": lift_err})
    ratio_err = 0.0
    for n in range(11, 21):
        for a in range(1, (n - 7) // 2 + 1):
            closed, numeric = perron_ratio_g2(a, n)
            ratio_err = max(ratio_err, abs(closed - numeric))
    rep.evidence.append({"perron_ratio_worst": ratio_err})
    if ratio_err > 1e-8:
        rep.fail({"perron_ratio_worst": ratio_err})
    return rep


def _root_owner(d, label: str):
    """Polynomial that the closed-form root ``label`` should annihilate."""
    from .families import _poly

    a = d.a
    if label.startswith("mu_1"):
        return _poly(1, -(2 + a), a)
    if label.startswith("mu_3"):
        return _poly(1, -(a + 1), a - 1)
    if label.startswith("psi"):
        k = 4 if label == "psi4" else int(label[3])
        return d.psi[k]
    if label.startswith("phi_bar") or label == "one":
        return d.phi if not d.phi.is_zero else None
    return None


# -- tabular output -------------------------------------------------------------------

def valley_csv(n: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "a", "b", "rho"])
    for a, g in g2_valley(n):
        w.writerow([n, a, n - 2 * a - 7, f"{spectral_radius(g).rho:.12f}"])
    return buf.getvalue()


def reports_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim_id", "range", "status", "strict", "winners", "rho_lo", "rho_hi"])
    for r in reports:
        w.writerow([r.claim_id, r.parameter_range, r.status, r.strict,
                    " ".join(r.winners), r.rho_lo or "", r.rho_hi or ""])
    return buf.getvalue()


def run_all(max_n: int = 18, graph_max_n: int = 9, seed: int = 42, trials: int = 500,
            progress: Callable[[str], None] | None = None) -> list[VerificationReport]:
    """The whole battery, in a fixed order."""
    say = progress or (lambda s: None)
    out = []
    for n in range(1, min(graph_max_n, max_n, 9) + 1):
        say(f"minimizer-is-tree n={n}")
        out.append(verify_minimizer_is_tree(n))
    for n in range(2, max_n + 1):
        say(f"small gamma n={n}")
        out.append(verify_small_gamma(n))
    for n in range(11, min(max_n, 18) + 1):
        say(f"gamma-3 n={n}")
        out.append(verify_gamma3(n))
    for n in range(2, min(max_n, 16) + 1, 2):
        say(f"corona n={n}")
        out.append(verify_corona_even(n))
    for n in range(4, min(max_n, 16) + 1):
        say(f"distance-three n={n}")
        out.append(verify_distance_three(n))
    for lemma in LEMMAS:
        say(f"lemma {lemma}")
        out.append(verify_lemma_suite(lemma, trials, seed))
    say("identities")
    out.append(verify_identity_suite())
    for n in range(5, min(max_n, 15) + 1, 2):
        say(f"conjecture n={n}")
        out.append(check_conjecture_odd(n))
    return out
