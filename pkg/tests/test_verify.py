import json
import math
from fractions import Fraction

import numpy as np
import pytest

from domspec.canon import canonical_code
from domspec.enumeration import ClassQuery
from domspec.exactpoly import Ordering
from domspec.families import g2_graph, h, h_prime, p_half_corona, path, star
from domspec.graph import GraphError, emit_graph6, parse_graph6
from domspec.spectral import rho_float
from domspec.verify import (
    LEMMAS, SCHEMA_VERSION, VerificationReport, check_conjecture_odd, expected_regime,
    find_minimizers, regime_table, reports_csv, valley_csv, valley_minimum, verify_corona_even,
    verify_distance_three, verify_gamma3, verify_identity_suite, verify_lemma_suite,
    verify_minimizer_is_tree, verify_small_gamma,
)


def brute_minimum(n, gamma, trees_only=True):
    """Float minimum over the whole class, for cross-checking the certified search."""
    from domspec.enumeration import class_members

    return min(rho_float(g) for g in class_members(ClassQuery(n, gamma, trees_only)))


# -- minimiser search ---------------------------------------------------------------

def test_h_is_gamma2_winner_n8():
    mr = find_minimizers(ClassQuery(8, 2))
    assert mr.unique and mr.winners[0] == canonical_code(h(8))
    assert emit_graph6(mr.winner_graphs[0]) == "GhI?GG"
    assert mr.rho_interval.lo < 2 <= mr.rho_interval.hi
    assert mr.runner_up_gap > 0


def test_g2_is_gamma3_winner_n12():
    mr = find_minimizers(ClassQuery(12, 3))
    assert mr.unique and mr.winners[0] == canonical_code(g2_graph(2, 1, 2))


def test_p4_over_graphs():
    mr = find_minimizers(ClassQuery(4, 2, trees_only=False))
    assert mr.unique and mr.winners[0] == canonical_code(path(4))


@pytest.mark.parametrize("n,gamma,trees", [(7, 2, True), (9, 3, True), (10, 4, True), (6, 2, False), (7, 3, False)])
def test_certified_value_matches_float_minimum(n, gamma, trees):
    mr = find_minimizers(ClassQuery(n, gamma, trees))
    lo, hi = float(mr.rho_interval.lo), float(mr.rho_interval.hi)
    assert lo - 1e-12 <= brute_minimum(n, gamma, trees) <= hi + 1e-12
    assert mr.rayleigh_certified + mr.exact_fallbacks + mr.survivors == mr.class_size


def test_float_only_mode_agrees():
    a = find_minimizers(ClassQuery(11, 3), exact=False)
    b = find_minimizers(ClassQuery(11, 3))
    assert a.winners == b.winners


def test_find_minimizers_needs_gamma():
    with pytest.raises(GraphError):
        find_minimizers(ClassQuery(6))


def test_report_dict():
    d = find_minimizers(ClassQuery(6, 1)).to_dict()
    assert d["winners"] == [emit_graph6(star(6))]
    assert Fraction(d["rho_lo"]) < Fraction(d["rho_hi"])


# -- claim checks ----------------------------------------------------------------------

def test_minimizer_is_tree_small():
    for n in range(1, 8):
        assert verify_minimizer_is_tree(n).status == "confirmed"


def test_small_gamma():
    for n in range(2, 13):
        rep = verify_small_gamma(n)
        assert rep.status == "confirmed", rep.exceptions


def test_gamma3():
    for n in (11, 12, 13):
        rep = verify_gamma3(n)
        assert rep.status == "confirmed", rep.exceptions
    with pytest.raises(GraphError):
        verify_gamma3(10)


def test_regime_rule():
    assert expected_regime(4, 15) is Ordering.GREATER
    assert expected_regime(4, 16) is Ordering.LESS
    for n in range(11, 16):
        assert all(r["ok"] for r in regime_table(n))


def test_valley_minimum_examples():
    assert valley_minimum(12) == 2
    assert valley_minimum(13) == 3
    assert valley_minimum(14) == 3


def test_corona_even():
    for n in (2, 4, 6, 8, 10):
        assert verify_corona_even(n).status == "confirmed"
    with pytest.raises(GraphError):
        verify_corona_even(7)


def test_distance_three():
    for n in range(4, 12):
        assert verify_distance_three(n).status == "confirmed"


def test_conjecture_reports():
    r5 = check_conjecture_odd(5)
    assert r5.status == "confirmed" and not r5.strict
    r7 = check_conjecture_odd(7)
    assert r7.status == "refuted"
    ev = r7.evidence[-1]
    assert ev["certified"] and ev["h_prime"] == emit_graph6(h_prime(7))
    assert [canonical_code(parse_graph6(w)) for w in r7.winners] == [canonical_code(path(7))]
    with pytest.raises(GraphError):
        check_conjecture_odd(8)


def test_lemma_suites_small():
    for lemma in LEMMAS:
        rep = verify_lemma_suite(lemma, trials=40, seed=3)
        assert rep.status == "confirmed", (lemma, rep.exceptions)
    sub = verify_lemma_suite("subdivision", trials=5)
    assert [e["invariant"] for e in sub.evidence[1:]] == [True, True, True]


def test_lemma_errors():
    with pytest.raises(GraphError):
        verify_lemma_suite("nope")


def test_identity_suite():
    rep = verify_identity_suite(max_n=16)
    assert rep.status == "confirmed", rep.exceptions


# -- serialisation ----------------------------------------------------------------------

def test_json_schema_and_determinism():
    a = verify_gamma3(12).to_json()
    b = verify_gamma3(12).to_json()
    assert a == b
    d = json.loads(a)
    assert d["schema_version"] == SCHEMA_VERSION
    assert set(d) >= {"claim_id", "range", "status", "evidence", "exceptions", "winners", "rho_lo", "rho_hi"}
    assert d["claim_id"] == "gamma-3"


def test_lemma_reports_deterministic():
    assert verify_lemma_suite("slide", 30, 7).to_json() == verify_lemma_suite("slide", 30, 7).to_json()


def test_report_fail():
    r = VerificationReport("x", "y")
    assert r.ok
    r.fail({"why": 1})
    assert not r.ok and r.status == "refuted"


def test_csv_outputs():
    text = valley_csv(13)
    lines = text.strip().splitlines()
    assert lines[0] == "n,a,b,rho" and len(lines) == 4
    rhos = [float(x.split(",")[3]) for x in lines[1:]]
    assert int(np.argmin(rhos)) + 1 == valley_minimum(13)
    out = reports_csv([VerificationReport("c", "r")])
    assert out.splitlines()[1].startswith("c,r,confirmed")


def test_corona_winner_example():
    mr = find_minimizers(ClassQuery(8, 4))
    assert mr.unique and mr.winners[0] == canonical_code(p_half_corona(8))


@pytest.mark.parametrize("n", [7, 9, 11])
def test_conjecture_winner_matches_brute_force(n):
    import networkx as nx

    from conftest import brute_gamma
    from domspec.graph import build_graph

    gamma = n // 2
    best, best_rho = None, math.inf
    for t in nx.nonisomorphic_trees(n):
        edges = list(t.edges())
        if brute_gamma(n, edges) != gamma:
            continue
        r = float(np.linalg.eigvalsh(nx.to_numpy_array(t))[-1])
        if r < best_rho - 1e-9:
            best, best_rho = edges, r
    rep = check_conjecture_odd(n)
    assert [canonical_code(parse_graph6(w)) for w in rep.winners] == [canonical_code(build_graph(n, best))]
    assert rho_float(h_prime(n)) > best_rho + 1e-6
