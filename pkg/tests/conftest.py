import random

import pytest

from zdgraph import rings as R
from zdgraph.graphs import Graph


def brute_zero_divisor_graph(ring) -> Graph:
    """Independent O(n^2) construction straight from the definition."""
    n = ring.size
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if ring.mul(a, b) == 0]
    g = Graph.from_edges(n, edges, [ring.label(i) for i in range(n)])
    return g


def random_graph(rng: random.Random, n: int, density: float | None = None) -> Graph:
    d = rng.random() if density is None else density
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < d]
    return Graph.from_edges(n, edges)


# a spread of small rings covering every family and a few products
SMALL_RING_SPECS = [
    R.Zn(2),
    R.Zn(4),
    R.Zn(6),
    R.Zn(12),
    R.Zn(27),
    R.Zn(30),
    R.GF(2, 1),
    R.GF(2, 2),
    R.GF(3, 2),
    R.GF(2, 4),
    R.MonicQuotient(R.Zn(4), (0, 0, 1)),
    R.MonicQuotient(R.Zn(2), (0, 0, 0, 1)),
    R.MonicQuotient(R.Zn(9), (3, 1, 1)),
    R.FamA(2, 1),
    R.FamA(2, 2),
    R.FamA(2, 3),
    R.FamA(3, 2),
    R.FamB(2),
    R.FamB(3),
    R.FamC(2),
    R.FamC(3),
    R.FamD(2),
    R.FamD(3),
    R.Product((R.Zn(2), R.GF(3))),
    R.Product((R.Zn(4), R.Zn(4))),
    R.Product((R.GF(3), R.GF(3))),
    R.Product((R.Zn(2), R.Zn(2), R.Zn(2))),
    R.Product((R.Zn(4), R.GF(2, 2))),
]


@pytest.fixture(scope="session")
def small_rings():
    return [(spec, R.make_ring(spec)) for spec in SMALL_RING_SPECS]
