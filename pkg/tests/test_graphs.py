import itertools
import json

import pytest

from screewidth import graphs
from screewidth.errors import (
    BadParamsError,
    DisconnectedError,
    NotABridgeError,
    NotTwoValentError,
    SelfLoopError,
    UnknownVertexError,
)
from conftest import random_connected_multigraph


def test_build_k2():
    g = graphs.build(["a", "b"], [("a", "b", 1)])
    assert g.n == 2 and g.edge_count() == 1 and g.is_tree()


def test_build_merges_parallel_entries():
    g = graphs.build(["a", "b"], [("a", "b", 2), ("b", "a", 1)])
    assert g.multiplicity("a", "b") == 3
    assert g.edge_count() == 3


def test_build_errors():
    with pytest.raises(SelfLoopError):
        graphs.build(["a"], [("a", "a", 1)])
    with pytest.raises(DisconnectedError):
        graphs.build(["a", "b", "c"], [("a", "b", 1)])
    with pytest.raises(UnknownVertexError):
        graphs.build(["a", "b"], [("a", "z", 1)])
    with pytest.raises(BadParamsError):
        graphs.build(["a", "b"], [("a", "b", 0)])


# --- family counts against closed forms ------------------------------------

def test_family_counts():
    cases = [
        (graphs.path(5), 5, 4),
        (graphs.star(5), 6, 5),
        (graphs.cycle(7), 7, 7),
        (graphs.complete(6), 6, 15),
        (graphs.complete_multigraph(3, 7), 3, 21),
        (graphs.complete_multipartite(2, 3), 5, 6),
        (graphs.banana(4), 2, 4),
        (graphs.petersen(), 10, 15),
        (graphs.grid(3, 4), 12, 17),
        (graphs.stacked_prism(4, 2), 8, 12),
        (graphs.torus(3, 4), 12, 24),
        (graphs.hypercube(4), 16, 32),
        (graphs.rook(4, 4), 16, 48),
        (graphs.doubled_path(4), 6, 10),
        (graphs.multipath(4), 4, 12),
        (graphs.banana_triangle(), 6, 12),
        (graphs.sierpinski(), 15, 27),
    ]
    for g, n, m in cases:
        assert (g.n, g.edge_count()) == (n, m)


def test_cubic_caterpillar_shape():
    # path of length (n/2)+1 with a pendant leaf on each internal vertex
    g = graphs.cubic_caterpillar(8)
    assert g.n == 10
    assert sorted(g.valence(v) for v in g.vertices).count(3) == 4
    assert g.is_tree()
    with pytest.raises(BadParamsError):
        graphs.cubic_caterpillar(5)


def test_quadratic_gap_multiplicity():
    g = graphs.quadratic_gap(5)
    assert g.n == 25
    assert max(m for _, _, m in g.edges()) == 11  # C(5,2) + 1


def test_doubled_path_subdivided_counts():
    for m in (2, 3, 4):
        g = graphs.doubled_path_subdivided(m)
        base = 2 * m - 2
        assert g.n == base + (base - 1) * (m - 2)
        assert g.edge_count() == 2 * (base - 1) + (base - 1) * (m - 2)


def test_np_gadget_shape():
    base = graphs.cycle(4)
    g = graphs.np_gadget(base)
    assert g.n == 8
    for i in range(4):
        assert g.valence(f"g{i}") == 7  # adjacent to all other vertices
    assert min(g.valence(v) for v in g.vertices) >= g.n // 2 + 1


def test_family_dispatch():
    assert graphs.family("cycle", 5).n == 5
    with pytest.raises(BadParamsError):
        graphs.family("no-such-family")
    with pytest.raises(BadParamsError):
        graphs.family("cycle", 2)
    gadget = graphs.family("np_gadget", base={"family": "cycle", "params": [4]})
    assert gadget.n == 8


# --- products ---------------------------------------------------------------

def test_p2_square_is_c4():
    g = graphs.cartesian_product(graphs.path(2), graphs.path(2))
    assert g.n == 4 and g.edge_count() == 4
    assert all(g.valence(v) == 2 for v in g.vertices)


def test_grid_is_path_product():
    assert graphs.grid(3, 4) == graphs.cartesian_product(graphs.path(3), graphs.path(4))


def test_product_symmetric_up_to_coordinate_swap():
    g = graphs.build(["1", "2", "3"], [("1", "2", 2), ("2", "3", 1)])
    h = graphs.path(3)
    gh = graphs.cartesian_product(g, h)
    hg = graphs.cartesian_product(h, g)
    swap = {f"{a}|{b}": f"{b}|{a}" for a in g.vertices for b in h.vertices}
    assert {(frozenset((swap[u], swap[v])), m) for u, v, m in gh.edges()} == {
        (frozenset((u, v)), m) for u, v, m in hg.edges()
    }


def test_rooted_product_counts():
    g = graphs.rooted_product(graphs.complete(3), graphs.banana(3), "base")
    assert g.n == 6
    assert g == graphs.banana_triangle()


def test_rooted_product_unknown_root():
    with pytest.raises(UnknownVertexError):
        graphs.rooted_product(graphs.complete(3), graphs.banana(3), "nope")


# --- connectivity and independence ------------------------------------------

def test_edge_connectivity_examples():
    assert graphs.edge_connectivity(graphs.petersen())[0] == 3
    assert graphs.edge_connectivity(graphs.complete_multigraph(3, 7))[0] == 14
    assert graphs.edge_connectivity(graphs.star(4))[0] == 1


def test_edge_connectivity_matches_brute_force(rng):
    for _ in range(25):
        g = random_connected_multigraph(rng, nmax=8)
        fast, (a, b) = graphs.edge_connectivity(g)
        brute, _ = graphs.brute_force_edge_connectivity(g)
        assert fast == brute
        # witness achieves the value
        cut = sum(
            m for u, v, m in g.edges() if (u in a) != (v in a)
        )
        assert cut == fast and set(a) | set(b) == set(g.vertices)


def test_independence_examples():
    assert graphs.independence_number(graphs.complete(6))[0] == 1
    assert graphs.independence_number(graphs.cycle(5))[0] == 2
    p = graphs.petersen()
    value, witness = graphs.independence_number(p)
    assert value == 4 and len(witness) == 4
    for u, v in itertools.combinations(witness, 2):
        assert p.multiplicity(u, v) == 0


def test_independence_matches_brute_force(rng):
    for _ in range(20):
        g = random_connected_multigraph(rng, nmax=8)
        assert graphs.independence_number(g)[0] == graphs.brute_force_independence_number(g)


# --- local surgery ----------------------------------------------------------

def test_subdivide_smooth_inverse():
    k2 = graphs.build(["a", "b"], [("a", "b", 1)])
    p3 = graphs.subdivide(k2, ("a", "b"), new_name="m")
    assert p3.n == 3 and p3.valence("m") == 2
    back = graphs.smooth(p3, "m")
    assert back == k2


def test_smooth_requires_distinct_neighbors():
    g = graphs.build(["a", "b", "c"], [("a", "b", 2), ("b", "c", 1)])
    # a is 2-valent but both edges go to b
    with pytest.raises(NotTwoValentError):
        graphs.smooth(g, "a")


def test_subdivide_one_copy_of_doubled_edge():
    g = graphs.build(["a", "b"], [("a", "b", 2)])
    s = graphs.subdivide(g, ("a", "b"), new_name="m")
    assert s.multiplicity("a", "b") == 1
    assert s.multiplicity("a", "m") == 1 and s.multiplicity("m", "b") == 1


def test_smooth_roundtrip_random(rng):
    for _ in range(15):
        g = random_connected_multigraph(rng, nmax=6)
        u, v, _ = g.edges()[rng.randrange(g.simple_edge_count())]
        s = graphs.subdivide(g, (u, v), new_name="zz")
        assert graphs.smooth(s, "zz") == g


def test_bridges_and_split():
    g = graphs.build(
        ["a", "b", "c", "d"],
        [("a", "b", 1), ("b", "c", 2), ("c", "d", 1), ("d", "b", 1)],
    )
    assert graphs.bridges(g) == [("a", "b")]
    g1, g2 = graphs.delete_bridge_split(g, ("a", "b"))
    assert g1.vertices == ("a",) and set(g2.vertices) == {"b", "c", "d"}
    with pytest.raises(NotABridgeError):
        graphs.delete_bridge_split(g, ("b", "c"))


def test_doubled_edges_are_not_bridges():
    g = graphs.doubled_path(3)
    assert graphs.bridges(g) == []


def test_induced_components():
    g = graphs.cycle(6)
    comps = graphs.induced_components(g, ["v0", "v1", "v3"])
    assert sorted(c.n for c in comps) == [1, 2]
    with pytest.raises(DisconnectedError):
        graphs.induced_subgraph(g, ["v0", "v3"])
    sub = graphs.induced_subgraph(g, ["v0", "v1", "v2"])
    assert sub.edge_count() == 2


# --- serialization ----------------------------------------------------------

def test_json_roundtrip(rng):
    for _ in range(10):
        g = random_connected_multigraph(rng)
        assert graphs.loads(g.dumps()) == g


def test_json_default_multiplicity():
    g = graphs.from_json_obj({"vertices": ["a", "b"], "edges": [["a", "b"]]})
    assert g.multiplicity("a", "b") == 1


def test_graph_hash_is_content_hash():
    g1 = graphs.cycle(4)
    g2 = graphs.build([f"v{i}" for i in range(4)],
                      [("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v0")])
    assert g1.graph_hash == g2.graph_hash
    assert g1.graph_hash != graphs.cycle(5).graph_hash


def test_dot_export_lists_multiplicities():
    g = graphs.banana(3)
    dot = g.to_dot()
    assert '"top" -- "base" [label=3];' in dot
    assert dot.startswith("graph G {")
