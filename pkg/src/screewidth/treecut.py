"""Tree-cut decompositions: validation, adhesions, width, and constructions.

A decomposition is a tree of *nodes* joined by *links* (reserving "vertex"
and "edge" for the underlying graph) together with pairwise-disjoint bags
whose union is the whole vertex set.  Bags may be empty.

The width of a decomposition is max(link width, bag width), where the link
width is the largest link adhesion and the bag width is the largest value of
|bag| + |node adhesion|.  Adhesions are edge multisets, reported as
{(u, v): count} with cardinalities taken with multiplicity.
"""

from __future__ import annotations

import json

from .errors import (
    BadParamsError,
    BadPartitionError,
    BagsMissVerticesError,
    BagsOverlapError,
    EndpointNotFoundError,
    GraphMismatchError,
    NotATreeError,
    NotIndependentError,
    ShapeMismatchError,
    UnknownLinkError,
    UnknownNodeError,
    UnknownVertexError,
)
from . import graphs
from .graphs import Multigraph


class WidthReport:
    """Width of a decomposition plus the witnesses achieving each maximum."""

    __slots__ = ("link_width", "bag_width", "width", "witness_link", "witness_node")

    def __init__(self, link_width, bag_width, witness_link, witness_node):
        self.link_width = link_width
        self.bag_width = bag_width
        self.width = max(link_width, bag_width)
        self.witness_link = witness_link
        self.witness_node = witness_node

    def to_json_obj(self):
        return {
            "width": self.width,
            "link_width": self.link_width,
            "bag_width": self.bag_width,
            "witness_link": list(self.witness_link) if self.witness_link else None,
            "witness_node": self.witness_node,
        }

    def __repr__(self):
        return (
            f"WidthReport(width={self.width}, link={self.link_width}, "
            f"bag={self.bag_width})"
        )


class TreeCutDecomposition:
    """Validated tree-cut decomposition; immutable after construction."""

    __slots__ = ("graph", "nodes", "links", "bags", "_node_index", "_node_of_vertex", "_nbrs")

    def __init__(self, graph, nodes, links, bags):
        self.graph = graph
        self.nodes = tuple(nodes)
        self.links = tuple(tuple(l) for l in links)
        self.bags = {b: frozenset(bags.get(b, ())) for b in self.nodes}
        self._node_index = {b: i for i, b in enumerate(self.nodes)}
        self._node_of_vertex = {}
        for b in self.nodes:
            for v in self.bags[b]:
                self._node_of_vertex[v] = b
        self._nbrs = {b: [] for b in self.nodes}
        for a, b in self.links:
            self._nbrs[a].append(b)
            self._nbrs[b].append(a)

    def node_of(self, vertex):
        return self._node_of_vertex[vertex]

    def neighbors(self, node):
        return tuple(self._nbrs[node])

    def valence(self, node):
        return len(self._nbrs[node])

    def bag(self, node):
        try:
            return self.bags[node]
        except KeyError:
            raise UnknownNodeError(f"unknown node {node!r}") from None

    def side_of_link(self, link):
        """Nodes of the component of the tree minus `link` containing link[0]."""
        a, b = self._resolve_link(link)
        seen = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for y in self._nbrs[x]:
                if {x, y} == {a, b}:
                    continue
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def _resolve_link(self, link):
        a, b = link
        if (a, b) in self.links:
            return a, b
        if (b, a) in self.links:
            return a, b
        raise UnknownLinkError(f"unknown link {link!r}")

    # -- serialization ------------------------------------------------------

    def to_cert_obj(self, claimed_width=None):
        obj = {
            "graph_hash": self.graph.graph_hash,
            "tree": {
                "nodes": list(self.nodes),
                "links": [list(l) for l in self.links],
            },
            "bags": {
                b: sorted(self.bags[b], key=self.graph.index) for b in self.nodes
            },
        }
        if claimed_width is None:
            claimed_width = width(self).width
        obj["claimed_width"] = claimed_width
        return obj

    def dumps(self, claimed_width=None):
        return json.dumps(self.to_cert_obj(claimed_width), indent=2, sort_keys=True)

    def to_dot(self, name="T"):
        """Bags as clusters, tree links bold, graph edges between vertices."""
        lines = [f"graph {name} {{", "  compound=true;"]
        anchor = {}
        for k, b in enumerate(self.nodes):
            lines.append(f'  subgraph "cluster_{b}" {{')
            lines.append(f'    label="{b}";')
            members = sorted(self.bags[b], key=self.graph.index)
            if not members:
                ph = f"__empty_{k}"
                lines.append(f'    "{ph}" [shape=point, style=invis];')
                anchor[b] = ph
            else:
                for v in members:
                    lines.append(f'    "{v}";')
                anchor[b] = members[0]
            lines.append("  }")
        for a, b in self.links:
            lines.append(
                f'  "{anchor[a]}" -- "{anchor[b]}" '
                f'[style=bold, ltail="cluster_{a}", lhead="cluster_{b}"];'
            )
        for u, v, m in self.graph.edges():
            if self.node_of(u) != self.node_of(v):
                lines.append(f'  "{u}" -- "{v}" [label={m}, style=dashed];')
            else:
                lines.append(f'  "{u}" -- "{v}" [label={m}];')
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TreeCutDecomposition({len(self.nodes)} nodes on {self.graph!r})"


# --------------------------------------------------------------------------
# validation


def validate(graph, nodes, links, bags):
    """Check the tree and bag axioms and return the decomposition."""
    nodes = list(nodes)
    if not nodes:
        raise NotATreeError("decomposition needs at least one node")
    if len(set(nodes)) != len(nodes):
        raise NotATreeError("duplicate node names")
    node_set = set(nodes)
    links = [tuple(l) for l in links]
    for a, b in links:
        if a not in node_set or b not in node_set:
            raise NotATreeError(f"link ({a}, {b}) uses unknown nodes")
        if a == b:
            raise NotATreeError("links may not be loops")
    if len(links) != len(nodes) - 1:
        raise NotATreeError(
            f"a tree on {len(nodes)} nodes needs {len(nodes) - 1} links, got {len(links)}"
        )
    # connectivity of the node tree
    nbrs = {b: [] for b in nodes}
    for a, b in links:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in nbrs[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(nodes):
        raise NotATreeError("node tree is not connected")

    assigned = {}
    for b in nodes:
        for v in bags.get(b, ()):
            if not graph.has_vertex(v):
                raise UnknownVertexError(f"bag {b} contains unknown vertex {v!r}")
            if v in assigned:
                raise BagsOverlapError(
                    f"vertex {v} appears in bags {assigned[v]} and {b}"
                )
            assigned[v] = b
    missing = [v for v in graph.vertices if v not in assigned]
    if missing:
        raise BagsMissVerticesError(f"vertices not covered by any bag: {missing}")
    extra = set(bags) - node_set
    if extra:
        raise UnknownNodeError(f"bags for unknown nodes: {sorted(extra)}")
    return TreeCutDecomposition(graph, nodes, links, bags)


def from_cert_obj(graph, obj):
    """Load a certificate, refusing if it references a different graph."""
    if obj.get("graph_hash") != graph.graph_hash:
        raise GraphMismatchError(
            f"certificate is for graph {obj.get('graph_hash')}, "
            f"got {graph.graph_hash}"
        )
    return validate(graph, obj["tree"]["nodes"], obj["tree"]["links"], obj.get("bags", {}))


# --------------------------------------------------------------------------
# adhesions and width


def link_adhesion(dec, link):
    """Edges whose endpoints' bags lie in different components of T - link."""
    side = dec.side_of_link(link)
    adh = {}
    for u, v, m in dec.graph.edges():
        if (dec.node_of(u) in side) != (dec.node_of(v) in side):
            adh[(u, v)] = m
    return adh


def node_adhesion(dec, node):
    """Edges whose endpoints' bags lie in different components of T - node."""
    if node not in dec.bags:
        raise UnknownNodeError(f"unknown node {node!r}")
    comp = {}
    for k, start in enumerate(dec.neighbors(node)):
        if start in comp:
            continue
        comp[start] = k
        stack = [start]
        while stack:
            x = stack.pop()
            for y in dec.neighbors(x):
                if y != node and y not in comp:
                    comp[y] = k
                    stack.append(y)
    adh = {}
    bag = dec.bags[node]
    for u, v, m in dec.graph.edges():
        if u in bag or v in bag:
            continue
        if comp[dec.node_of(u)] != comp[dec.node_of(v)]:
            adh[(u, v)] = m
    return adh


def adhesion_size(adh):
    return sum(adh.values())


def width(dec):
    """Width report with canonical witnesses (first maximum in node/link order)."""
    bag_width = 0
    witness_node = None
    for b in dec.nodes:
        s = len(dec.bags[b]) + adhesion_size(node_adhesion(dec, b))
        if s > bag_width:
            bag_width = s
            witness_node = b
    link_width = 0
    witness_link = None
    for l in dec.links:
        s = adhesion_size(link_adhesion(dec, l))
        if s > link_width:
            link_width = s
            witness_link = l
    return WidthReport(link_width, bag_width, witness_link, witness_node)


# --------------------------------------------------------------------------
# normalization


def _fresh_names(dec, count):
    names = []
    k = 0
    existing = set(dec.nodes)
    while len(names) < count:
        cand = f"e{k}"
        if cand not in existing:
            names.append(cand)
            existing.add(cand)
        k += 1
    return names


def normalize_empty_bags(dec):
    """Delete empty leaves, smooth 2-valent empty nodes, split valence >= 4.

    Never increases width; the result has every empty bag on a trivalent
    node.  Nonempty bags are untouched.  Splitting groups the first two
    neighbors (canonical node order) onto the new trivalent node.
    """
    nodes = list(dec.nodes)
    links = {frozenset(l) for l in dec.links}
    bags = {b: set(dec.bags[b]) for b in nodes}

    def nbrs(b):
        return [x for x in nodes if frozenset((b, x)) in links]

    changed = True
    counter = 0
    existing = set(nodes)
    while changed:
        changed = False
        for b in list(nodes):
            if bags[b]:
                continue
            ns = nbrs(b)
            if len(ns) == 1 and len(nodes) > 1:
                nodes.remove(b)
                links.discard(frozenset((b, ns[0])))
                del bags[b]
                changed = True
                break
            if len(ns) == 2:
                nodes.remove(b)
                links.discard(frozenset((b, ns[0])))
                links.discard(frozenset((b, ns[1])))
                links.add(frozenset((ns[0], ns[1])))
                del bags[b]
                changed = True
                break
            if len(ns) >= 4:
                while f"e{counter}" in existing:
                    counter += 1
                b1 = f"e{counter}"
                existing.add(b1)
                while f"e{counter}" in existing:
                    counter += 1
                b2 = f"e{counter}"
                existing.add(b2)
                pos = nodes.index(b)
                nodes[pos:pos + 1] = [b1, b2]
                for x in ns:
                    links.discard(frozenset((b, x)))
                for x in ns[:2]:
                    links.add(frozenset((b1, x)))
                for x in ns[2:]:
                    links.add(frozenset((b2, x)))
                links.add(frozenset((b1, b2)))
                del bags[b]
                bags[b1] = set()
                bags[b2] = set()
                changed = True
                break
    ordered_links = [tuple(sorted(l, key=nodes.index)) for l in links]
    ordered_links.sort(key=lambda l: (nodes.index(l[0]), nodes.index(l[1])))
    return TreeCutDecomposition(dec.graph, nodes, ordered_links, bags)


# --------------------------------------------------------------------------
# constructions


def trivial_decomposition(graph):
    """One node holding every vertex; width |V|."""
    return TreeCutDecomposition(graph, ["b0"], [], {"b0": set(graph.vertices)})


def identity_tree_decomposition(tree):
    """For a tree: nodes are the vertices, each in its own bag; width 1."""
    if not tree.is_tree():
        raise BadParamsError("graph is not a tree")
    nodes = [f"n_{v}" for v in tree.vertices]
    links = [(f"n_{u}", f"n_{v}") for u, v, _ in tree.edges()]
    bags = {f"n_{v}": {v} for v in tree.vertices}
    return TreeCutDecomposition(tree, nodes, links, bags)


def from_bipartition(graph, side):
    """Two bags joined by a single link; width max(|A|, |B|, |E(A,B)|)."""
    side = set(side)
    for v in side:
        graph.index(v)
    if not side or len(side) == graph.n:
        raise BadPartitionError("bipartition side must be proper and nonempty")
    rest = [v for v in graph.vertices if v not in side]
    return TreeCutDecomposition(
        graph, ["a", "b"], [("a", "b")], {"a": side, "b": rest}
    )


def star_from_independent_set(graph, independent):
    """Central bag V - S with each member of the independent set S a leaf."""
    members = sorted(set(independent), key=graph.index)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if graph.multiplicity(u, v):
                raise NotIndependentError(f"{u} and {v} are adjacent")
    nodes = ["c"] + [f"leaf_{v}" for v in members]
    links = [("c", f"leaf_{v}") for v in members]
    bags = {"c": [v for v in graph.vertices if v not in set(members)]}
    for v in members:
        bags[f"leaf_{v}"] = {v}
    return TreeCutDecomposition(graph, nodes, links, bags)


def product_lift(dec, other, product=None):
    """Lift a decomposition of G to G x H by crossing every bag with V(H).

    The resulting width is |V(H)| times the original width.
    """
    lifted = graphs.cartesian_product(dec.graph, other)
    if product is not None:
        if product.graph_hash != lifted.graph_hash:
            raise GraphMismatchError("supplied product does not match G x H")
        lifted = product
    bags = {
        b: {f"{u}|{v}" for u in dec.bags[b] for v in other.vertices}
        for b in dec.nodes
    }
    return TreeCutDecomposition(lifted, dec.nodes, dec.links, bags)


def bridge_join(dec1, dec2, bridge, graph=None):
    """Join decompositions of the two sides of a bridge with one new link."""
    u, v = bridge
    if not dec1.graph.has_vertex(u):
        raise EndpointNotFoundError(f"{u!r} is not in the first graph")
    if not dec2.graph.has_vertex(v):
        raise EndpointNotFoundError(f"{v!r} is not in the second graph")
    if graph is None:
        verts = list(dec1.graph.vertices) + list(dec2.graph.vertices)
        edges = dec1.graph.edges() + dec2.graph.edges() + [(u, v, 1)]
        graph = graphs.build(verts, edges)
    else:
        expected = set(dec1.graph.vertices) | set(dec2.graph.vertices)
        if set(graph.vertices) != expected or graph.multiplicity(u, v) < 1:
            raise GraphMismatchError("graph does not match the joined pieces")

    clash = set(dec1.nodes) & set(dec2.nodes)
    rename1 = {b: (f"L.{b}" if b in clash else b) for b in dec1.nodes}
    rename2 = {b: (f"R.{b}" if b in clash else b) for b in dec2.nodes}
    nodes = [rename1[b] for b in dec1.nodes] + [rename2[b] for b in dec2.nodes]
    links = [(rename1[a], rename1[b]) for a, b in dec1.links]
    links += [(rename2[a], rename2[b]) for a, b in dec2.links]
    links.append((rename1[dec1.node_of(u)], rename2[dec2.node_of(v)]))
    bags = {rename1[b]: dec1.bags[b] for b in dec1.nodes}
    bags.update({rename2[b]: dec2.bags[b] for b in dec2.nodes})
    return TreeCutDecomposition(graph, nodes, links, bags)


def caterpillar_decomposition(graph, n):
    """Caterpillar of bulb bags for the quadratic-gap graph on n bulbs."""
    expected = graphs.quadratic_gap(n)
    if graph.graph_hash != expected.graph_hash:
        raise ShapeMismatchError("graph is not the n-bulb quadratic-gap graph")
    bulbs = []
    for i in range(n):
        hub = f"v{i}"
        bulbs.append({hub} | {f"{hub}|v{j}" for j in range(1, n)})
    if n == 2:
        nodes = ["l0", "l1"]
        links = [("l0", "l1")]
        bags = {"l0": bulbs[0], "l1": bulbs[1]}
        return TreeCutDecomposition(graph, nodes, links, bags)
    spine = [f"s{i}" for i in range(1, n - 1)]
    leaves = [f"l{i}" for i in range(n)]
    nodes = spine + leaves
    links = [(spine[i], spine[i + 1]) for i in range(len(spine) - 1)]
    links.append((spine[0], "l0"))
    for i in range(1, n - 1):
        links.append((f"s{i}", f"l{i}"))
    links.append((spine[-1], f"l{n-1}"))
    bags = {s: set() for s in spine}
    for i in range(n):
        bags[f"l{i}"] = bulbs[i]
    return TreeCutDecomposition(graph, nodes, links, bags)
