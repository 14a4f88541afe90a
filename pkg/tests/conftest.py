import random

import pytest

from screewidth import graphs


def random_connected_multigraph(rng, nmax=7, max_multiplicity=3, nmin=3):
    """Seeded random connected multigraph: spanning tree plus extras."""
    n = rng.randint(nmin, nmax)
    verts = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = rng.randrange(i)
        edges.append((verts[j], verts[i], rng.randint(1, max_multiplicity)))
    for _ in range(rng.randint(0, n)):
        i, j = rng.sample(range(n), 2)
        edges.append((verts[i], verts[j], rng.randint(1, max_multiplicity)))
    return graphs.build(verts, edges)


def disconnected_bag_graph():
    """Three doubled edges joined through two nonadjacent 3-valent vertices."""
    return graphs.build(
        ["u1", "u2", "v1", "v2", "w1", "w2", "x", "y"],
        [("u1", "u2", 2), ("v1", "v2", 2), ("w1", "w2", 2),
         ("x", "u1", 1), ("x", "v1", 1), ("x", "w1", 1),
         ("y", "u2", 1), ("y", "v2", 1), ("y", "w2", 1)],
    )


def minor_pair():
    """Five-cycle with one simple edge, and the doubled four-cycle obtained
    by contracting it; scramble number and screewidth climb from 3 to 4."""
    g = graphs.build(
        ["a", "b", "c", "d", "e"],
        [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "e", 2), ("e", "a", 1)],
    )
    h = graphs.build(
        ["a", "b", "c", "d"],
        [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)],
    )
    return g, h


def glued_four_cycles():
    """Two 4-cycles sharing a vertex; gonality 2."""
    return graphs.build(
        ["a", "p1", "q1", "b", "p2", "q2", "c"],
        [("a", "p1"), ("p1", "b"), ("a", "q1"), ("q1", "b"),
         ("b", "p2"), ("p2", "c"), ("b", "q2"), ("q2", "c")],
    )


@pytest.fixture
def rng():
    return random.Random(0x5C4EE)
