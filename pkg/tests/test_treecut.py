import itertools

import pytest

from screewidth import corpus, graphs, treecut as tc
from screewidth.errors import (
    BadPartitionError,
    BagsMissVerticesError,
    BagsOverlapError,
    EndpointNotFoundError,
    GraphMismatchError,
    NotATreeError,
    NotIndependentError,
    ShapeMismatchError,
)
from conftest import random_connected_multigraph


def petersen_width7():
    p = graphs.petersen()
    return tc.validate(
        p,
        ["b1", "b2", "b3", "b4", "b5"],
        [("b1", "b3"), ("b2", "b3"), ("b3", "b4"), ("b4", "b5")],
        {"b1": ["o0", "o1", "o2"], "b2": ["o3", "o4"], "b3": ["i0"],
         "b4": ["i2", "i3"], "b5": ["i1", "i4"]},
    )


def test_validate_accepts_trivial():
    g = graphs.cycle(4)
    dec = tc.trivial_decomposition(g)
    assert tc.width(dec).width == 4


def test_validate_rejects_overlap():
    g = graphs.path(2)
    with pytest.raises(BagsOverlapError):
        tc.validate(g, ["a", "b"], [("a", "b")], {"a": ["v0", "v1"], "b": ["v1"]})


def test_validate_rejects_missing_vertices():
    g = graphs.path(3)
    with pytest.raises(BagsMissVerticesError):
        tc.validate(g, ["a", "b"], [("a", "b")], {"a": ["v0"], "b": ["v1"]})


def test_validate_rejects_non_trees():
    g = graphs.path(2)
    with pytest.raises(NotATreeError):
        tc.validate(g, ["a", "b", "c"], [("a", "b")], {"a": ["v0"], "b": ["v1"], "c": []})
    with pytest.raises(NotATreeError):
        tc.validate(g, ["a", "b", "c"],
                    [("a", "b"), ("b", "c"), ("a", "c")],
                    {"a": ["v0"], "b": ["v1"], "c": []})


def test_certificate_roundtrip_and_hash_check():
    dec = petersen_width7()
    cert = dec.to_cert_obj()
    assert cert["claimed_width"] == 7
    again = tc.from_cert_obj(dec.graph, cert)
    assert again.bags == dec.bags
    with pytest.raises(GraphMismatchError):
        tc.from_cert_obj(graphs.cycle(5), cert)


def test_petersen_width7_adhesion_profile():
    dec = petersen_width7()
    assert tc.adhesion_size(tc.link_adhesion(dec, ("b1", "b3"))) == 5
    assert tc.adhesion_size(tc.link_adhesion(dec, ("b3", "b4"))) == 6
    assert tc.adhesion_size(tc.node_adhesion(dec, "b3")) == 6
    assert tc.adhesion_size(tc.node_adhesion(dec, "b4")) == 2
    # leaves separate nothing
    assert tc.node_adhesion(dec, "b1") == {}
    rep = tc.width(dec)
    assert (rep.width, rep.link_width, rep.bag_width) == (7, 6, 7)
    assert rep.witness_node == "b3"


def test_identity_decomposition_of_tree_has_width_one():
    t = graphs.cubic_caterpillar(6)
    dec = tc.identity_tree_decomposition(t)
    assert tc.width(dec).width == 1


def test_path_adhesion_lemma_on_corpus_decompositions():
    # an edge whose endpoint bags sit at nodes c and d belongs to the adhesion
    # of every interior node and every link of the tree path from c to d
    seen = 0
    for record in corpus.load_records():
        if record.get("mode") == "open":
            continue
        g = graphs.graph_from_spec(record["graph"])
        for chk in record["checks"]:
            if chk["op"] != "tcd_width":
                continue
            payload = chk["decomposition"]
            dec = tc.validate(g, payload["tree"]["nodes"],
                              payload["tree"]["links"], payload.get("bags", {}))
            seen += 1
            _assert_path_lemma(dec)
    assert seen >= 5


def _tree_path(dec, a, b):
    parent = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y in dec.neighbors(x):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return list(reversed(path))


def _assert_path_lemma(dec):
    for u, v, _ in dec.graph.edges():
        c, d = dec.node_of(u), dec.node_of(v)
        if c == d:
            continue
        path = _tree_path(dec, c, d)
        for b in path[1:-1]:
            assert any({u, v} == set(pair) for pair in tc.node_adhesion(dec, b))
        for x, y in zip(path, path[1:]):
            assert any({u, v} == set(pair) for pair in tc.link_adhesion(dec, (x, y)))


def test_link_adhesion_contains_endnode_intersection():
    dec = petersen_width7()
    for link in dec.links:
        adh_l = set(tc.link_adhesion(dec, link))
        for node in link:
            pass
        a, b = link
        inter = set(tc.node_adhesion(dec, a)) & set(tc.node_adhesion(dec, b))
        assert inter <= adh_l


# --- normalization ----------------------------------------------------------

def test_normalize_empty_leaf_removed():
    g = graphs.path(2)
    dec = tc.validate(g, ["a", "b", "c"], [("a", "b"), ("b", "c")],
                      {"a": ["v0"], "b": ["v1"], "c": []})
    norm = tc.normalize_empty_bags(dec)
    assert set(norm.nodes) == {"a", "b"}
    assert tc.width(norm).width == tc.width(dec).width


def test_normalize_smooths_two_valent_empty():
    g = graphs.path(2)
    dec = tc.validate(g, ["a", "mid", "b"], [("a", "mid"), ("mid", "b")],
                      {"a": ["v0"], "mid": [], "b": ["v1"]})
    norm = tc.normalize_empty_bags(dec)
    assert set(norm.nodes) == {"a", "b"}
    assert ("a", "b") in norm.links or ("b", "a") in norm.links


def test_normalize_splits_high_valence_empty():
    g = graphs.star(5)
    dec = tc.validate(
        g,
        ["hub", "x0", "x1", "x2", "x3", "x4"],
        [("hub", f"x{i}") for i in range(5)],
        {"hub": [], "x0": ["c"], "x1": ["l1", "l2"], "x2": ["l3"],
         "x3": ["l4"], "x4": ["l5"]},
    )
    before = tc.width(dec).width
    norm = tc.normalize_empty_bags(dec)
    assert tc.width(norm).width <= before
    for b in norm.nodes:
        if not norm.bags[b]:
            assert norm.valence(b) == 3
    # a second pass changes nothing
    again = tc.normalize_empty_bags(norm)
    assert set(again.nodes) == set(norm.nodes)
    assert {frozenset(l) for l in again.links} == {frozenset(l) for l in norm.links}


def test_normalize_preserves_nonempty_bags(rng):
    for _ in range(10):
        g = random_connected_multigraph(rng, nmax=6)
        # random decomposition: random partition on a random tree with padding
        verts = list(g.vertices)
        rng.shuffle(verts)
        k = rng.randint(1, g.n)
        bags = {f"n{i}": [] for i in range(k + rng.randint(0, 2))}
        for i, v in enumerate(verts):
            bags[f"n{i % k}"].append(v)
        names = list(bags)
        links = [(names[rng.randrange(i)], names[i]) for i in range(1, len(names))]
        dec = tc.validate(g, names, links, bags)
        norm = tc.normalize_empty_bags(dec)
        assert tc.width(norm).width <= tc.width(dec).width
        before = {frozenset(b) for b in dec.bags.values() if b}
        after = {frozenset(b) for b in norm.bags.values() if b}
        assert before == after


def test_normalized_leaf_count_bound(rng):
    # at most (leaves - 2) empty bags once normalization has run
    for _ in range(10):
        g = random_connected_multigraph(rng, nmax=6)
        dec = tc.trivial_decomposition(g)
        norm = tc.normalize_empty_bags(dec)
        leaves = [b for b in norm.nodes if norm.valence(b) <= 1]
        empties = [b for b in norm.nodes if not norm.bags[b]]
        if len(norm.nodes) > 1:
            assert len(empties) <= max(0, len(leaves) - 2)


# --- constructions ----------------------------------------------------------

def test_from_bipartition_widths():
    k5 = graphs.complete(5)
    dec = tc.from_bipartition(k5, ["v0"])
    assert tc.width(dec).width == 4  # max(1, 4, cut 4)
    k2 = graphs.complete(2)
    assert tc.width(tc.from_bipartition(k2, ["v0"])).width == 1
    with pytest.raises(BadPartitionError):
        tc.from_bipartition(k5, [])
    with pytest.raises(BadPartitionError):
        tc.from_bipartition(k5, list(k5.vertices))


def test_star_from_independent_set():
    p = graphs.petersen()
    _, ind = graphs.independence_number(p)
    dec = tc.star_from_independent_set(p, ind)
    assert tc.width(dec).width <= p.n - len(ind)
    with pytest.raises(NotIndependentError):
        tc.star_from_independent_set(p, ["o0", "o1"])


def test_star_from_independent_set_on_star_graph():
    g = graphs.star(4)
    dec = tc.star_from_independent_set(g, [f"l{i}" for i in range(1, 5)])
    assert tc.width(dec).width == 1


def test_product_lift_scales_width():
    c4 = graphs.cycle(4)
    base = tc.validate(c4, ["a", "b"], [("a", "b")],
                       {"a": ["v0", "v1"], "b": ["v2", "v3"]})
    assert tc.width(base).width == 2
    k2 = graphs.complete(2)
    lifted = tc.product_lift(base, k2)
    assert tc.width(lifted).width == 4
    t44 = graphs.torus(4, 4)
    lifted = tc.product_lift(base, c4, product=t44)
    assert tc.width(lifted).width == 8
    with pytest.raises(GraphMismatchError):
        tc.product_lift(base, k2, product=t44)


def test_bridge_join_width_and_adhesion():
    t1 = graphs.path(3)
    t2 = graphs.star(3)
    d1 = tc.identity_tree_decomposition(t1)
    d2 = tc.identity_tree_decomposition(t2)
    joined = tc.bridge_join(d1, d2, ("v2", "c"))
    assert tc.width(joined).width == 1
    new_link = joined.links[-1]
    assert tc.adhesion_size(tc.link_adhesion(joined, new_link)) == 1
    with pytest.raises(EndpointNotFoundError):
        tc.bridge_join(d1, d2, ("nope", "c"))


def test_caterpillar_decomposition_widths():
    for n, expect in ((4, 5), (5, 8), (6, 11)):
        g = graphs.quadratic_gap(n)
        dec = tc.caterpillar_decomposition(g, n)
        assert tc.width(dec).width == expect
    with pytest.raises(ShapeMismatchError):
        tc.caterpillar_decomposition(graphs.cycle(5), 5)


def test_dot_export_of_decomposition():
    dec = petersen_width7()
    dot = dec.to_dot()
    assert "cluster_b3" in dot and "style=bold" in dot
