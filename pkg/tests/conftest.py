import itertools
import random

import pytest
from hypothesis import HealthCheck, settings

from domspec.graph import build_graph

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- small independent oracles shared by several modules ---------------------------

def uf_connected(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)}) <= 1


def brute_canonical(n, edges):
    """Smallest sorted edge list over all relabelings (only for tiny n)."""
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return (n, best)


def brute_gamma(n, edges):
    closed = [{v} for v in range(n)]
    for u, v in edges:
        closed[u].add(v)
        closed[v].add(u)
    everything = set(range(n))
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            if set().union(*(closed[v] for v in combo)) == everything:
                return k
    return 0


def rand_tree(rng, n):
    return build_graph(n, [(i, rng.randrange(i)) for i in range(1, n)])


def rand_connected(rng, n, p=0.3):
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    return build_graph(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240601)
