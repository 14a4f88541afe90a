"""Connected loopless multigraphs and the structural operations on them.

Vertices are opaque strings; the canonical vertex order is insertion order,
which keeps every downstream search deterministic.  Multiplicities are stored
as counts on unordered vertex pairs (no parallel-edge identities): every
quantity we compute depends only on the counts.

Disconnected graphs are rejected at construction.  Operations whose result
may be disconnected (vertex deletion) return lists of components instead.
"""

from __future__ import annotations

import hashlib
import itertools
import json

import networkx as nx

from .errors import (
    BadParamsError,
    DisconnectedError,
    NotABridgeError,
    NotTwoValentError,
    SelfLoopError,
    UnknownVertexError,
)


class Multigraph:
    """Immutable connected multigraph with positive edge multiplicities."""

    __slots__ = ("_vertices", "_index", "_w", "_adj", "_hash", "_cut_table")

    def __init__(self, vertices, weights):
        # Internal constructor; use build() / the family generators.
        self._vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self._vertices)}
        if len(self._index) != len(self._vertices):
            raise BadParamsError("duplicate vertex ids")
        n = len(self._vertices)
        self._w = [[0] * n for _ in range(n)]
        for (i, j), m in weights.items():
            if i == j:
                raise SelfLoopError(f"loop at {self._vertices[i]}")
            if m <= 0:
                raise BadParamsError("multiplicities must be positive")
            self._w[i][j] = m
            self._w[j][i] = m
        self._adj = [
            sum(1 << j for j in range(n) if self._w[i][j] > 0) for i in range(n)
        ]
        if not self._connected():
            raise DisconnectedError("graph is not connected")
        self._hash = None
        self._cut_table = None

    # -- basic queries ----------------------------------------------------

    @property
    def vertices(self):
        return self._vertices

    @property
    def n(self):
        return len(self._vertices)

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def has_vertex(self, v):
        return v in self._index

    def multiplicity(self, u, v):
        return self._w[self.index(u)][self.index(v)]

    def valence(self, v):
        i = self.index(v)
        return sum(self._w[i])

    def neighbors(self, v):
        i = self.index(v)
        return tuple(self._vertices[j] for j in range(self.n) if self._w[i][j])

    def edges(self):
        """Canonical edge list [(u, v, multiplicity)] ordered by vertex index."""
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self._w[i][j]:
                    out.append((self._vertices[i], self._vertices[j], self._w[i][j]))
        return out

    def edge_count(self):
        """Number of edges counted with multiplicity."""
        return sum(m for _, _, m in self.edges())

    def simple_edge_count(self):
        return len(self.edges())

    def is_simple(self):
        return all(m == 1 for _, _, m in self.edges())

    def is_tree(self):
        return self.edge_count() == self.n - 1

    # -- integer-index views used by the solvers ---------------------------

    def weight_matrix(self):
        return self._w

    def adjacency_masks(self):
        return self._adj

    def connected_mask(self, mask):
        """Is the sub-multigraph induced by this index bitmask connected?"""
        if mask == 0:
            return False
        start = (mask & -mask).bit_length() - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            m = frontier
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                nxt |= self._adj[i] & mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    def cut_weight(self, mask):
        """Total multiplicity of edges between the masked set and its complement."""
        total = 0
        n = self.n
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            row = self._w[i]
            for j in range(n):
                if not (mask >> j) & 1 and row[j]:
                    total += row[j]
        return total

    def cut_table(self):
        """Cut weights for all vertex subsets, indexed by bitmask (n <= 16)."""
        if self._cut_table is None:
            n = self.n
            if n > 16:
                raise BadParamsError("cut table limited to 16 vertices")
            # cut(S + v) = cut(S) + val(v) - 2 * w(v, S)
            val = [sum(self._w[i]) for i in range(n)]
            table = [0] * (1 << n)
            for mask in range(1, 1 << n):
                i = (mask & -mask).bit_length() - 1
                rest = mask & (mask - 1)
                w_in = 0
                row = self._w[i]
                m = rest
                while m:
                    j = (m & -m).bit_length() - 1
                    m &= m - 1
                    w_in += row[j]
                table[mask] = table[rest] + val[i] - 2 * w_in
            self._cut_table = table
        return self._cut_table

    def _connected(self):
        return self.n > 0 and self.connected_mask((1 << self.n) - 1)

    # -- identity -----------------------------------------------------------

    @property
    def graph_hash(self):
        if self._hash is None:
            payload = json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))
            self._hash = hashlib.sha256(payload.encode()).hexdigest()[:16]
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._w == other._w

    def __hash__(self):
        return hash((self._vertices, self.graph_hash))

    def __repr__(self):
        return f"Multigraph({self.n} vertices, {self.edge_count()} edges)"

    def relabeled(self, mapping):
        """New graph with vertices renamed through `mapping` (order preserved)."""
        verts = [mapping[v] for v in self._vertices]
        weights = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self._w[i][j]:
                    weights[(i, j)] = self._w[i][j]
        return Multigraph(verts, weights)

    # -- serialization ------------------------------------------------------

    def to_json_obj(self):
        return {
            "vertices": list(self._vertices),
            "edges": [[u, v, m] for u, v, m in self.edges()],
        }

    def dumps(self):
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    def to_nx(self):
        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        for u, v, m in self.edges():
            g.add_edge(u, v, weight=m, capacity=m)
        return g

    def to_dot(self, name="G"):
        lines = [f"graph {name} {{"]
        for v in self._vertices:
            lines.append(f'  "{v}";')
        for u, v, m in self.edges():
            lines.append(f'  "{u}" -- "{v}" [label={m}];')
        lines.append("}")
        return "\n".join(lines)


class VertexSet:
    """A validated subset of a graph's vertices, tied to its owning graph."""

    __slots__ = ("graph", "members")

    def __init__(self, graph, members):
        members = frozenset(members)
        for v in members:
            if not graph.has_vertex(v):
                raise UnknownVertexError(f"unknown vertex {v!r}")
        self.graph = graph
        self.members = members

    def mask(self):
        m = 0
        for v in self.members:
            m |= 1 << self.graph.index(v)
        return m

    def sorted(self):
        return sorted(self.members, key=self.graph.index)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, v):
        return v in self.members

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if isinstance(other, VertexSet):
            return self.members == other.members and self.graph is other.graph
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"VertexSet({self.sorted()})"


# --------------------------------------------------------------------------
# construction


def build(vertices, edge_list):
    """Build a connected multigraph; repeated (u, v) entries sum multiplicities."""
    vertices = list(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    if len(index) != len(vertices):
        raise BadParamsError("duplicate vertex ids")
    weights = {}
    for entry in edge_list:
        if len(entry) == 2:
            u, v = entry
            m = 1
        else:
            u, v, m = entry
        if u not in index:
            raise UnknownVertexError(f"unknown vertex {u!r}")
        if v not in index:
            raise UnknownVertexError(f"unknown vertex {v!r}")
        if u == v:
            raise SelfLoopError(f"loop at {u}")
        if m <= 0:
            raise BadParamsError("multiplicities must be positive")
        i, j = sorted((index[u], index[v]))
        weights[(i, j)] = weights.get((i, j), 0) + m
    return Multigraph(vertices, weights)


def from_json_obj(obj):
    return build(obj["vertices"], [tuple(e) for e in obj["edges"]])


def loads(text):
    return from_json_obj(json.loads(text))


# --------------------------------------------------------------------------
# products


def cartesian_product(g, h):
    """Cartesian product; vertex (u, v) is named "u|v"."""
    verts = [f"{u}|{v}" for u in g.vertices for v in h.vertices]
    edges = []
    for u in g.vertices:
        for a, b, m in h.edges():
            edges.append((f"{u}|{a}", f"{u}|{b}", m))
    for a, b, m in g.edges():
        for v in h.vertices:
            edges.append((f"{a}|{v}", f"{b}|{v}", m))
    return build(verts, edges)


def rooted_product(g, h, root):
    """A copy of h glued at `root` onto every vertex of g.

    The copy at vertex u keeps u's name for the glued vertex; the other
    vertices of h are named "u|x".
    """
    if not h.has_vertex(root):
        raise UnknownVertexError(f"root {root!r} not in second factor")

    def name(u, x):
        return u if x == root else f"{u}|{x}"

    verts = []
    for u in g.vertices:
        verts.append(u)
        verts.extend(f"{u}|{x}" for x in h.vertices if x != root)
    edges = [(a, b, m) for a, b, m in g.edges()]
    for u in g.vertices:
        for a, b, m in h.edges():
            edges.append((name(u, a), name(u, b), m))
    return build(verts, edges)


# --------------------------------------------------------------------------
# families


def path(n):
    if n < 1:
        raise BadParamsError("path needs n >= 1")
    verts = [f"v{i}" for i in range(n)]
    return build(verts, [(f"v{i}", f"v{i+1}") for i in range(n - 1)])


def star(n):
    if n < 1:
        raise BadParamsError("star needs n >= 1")
    verts = ["c"] + [f"l{i}" for i in range(1, n + 1)]
    return build(verts, [("c", f"l{i}") for i in range(1, n + 1)])


def cubic_caterpillar(n):
    """Path of length n/2 + 1 with a pendant leaf on each internal vertex."""
    if n < 2 or n % 2:
        raise BadParamsError("cubic caterpillar needs even n >= 2")
    k = n // 2
    verts = [f"p{i}" for i in range(k + 2)] + [f"l{i}" for i in range(1, k + 1)]
    edges = [(f"p{i}", f"p{i+1}") for i in range(k + 1)]
    edges += [(f"p{i}", f"l{i}") for i in range(1, k + 1)]
    return build(verts, edges)


def cycle(n):
    if n < 3:
        raise BadParamsError("cycle needs n >= 3")
    verts = [f"v{i}" for i in range(n)]
    return build(verts, [(f"v{i}", f"v{(i+1) % n}") for i in range(n)])


def complete(n):
    if n < 1:
        raise BadParamsError("complete graph needs n >= 1")
    verts = [f"v{i}" for i in range(n)]
    return build(verts, [(a, b) for a, b in itertools.combinations(verts, 2)])


def complete_multigraph(n, m):
    if n < 2 or m < 1:
        raise BadParamsError("complete multigraph needs n >= 2, m >= 1")
    verts = [f"v{i}" for i in range(n)]
    return build(verts, [(a, b, m) for a, b in itertools.combinations(verts, 2)])


def complete_multipartite(*sizes):
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise BadParamsError("multipartite graph needs >= 2 positive parts")
    parts = [[f"p{k}_{i}" for i in range(s)] for k, s in enumerate(sizes)]
    verts = [v for part in parts for v in part]
    edges = []
    for a, b in itertools.combinations(range(len(sizes)), 2):
        edges.extend((u, v) for u in parts[a] for v in parts[b])
    return build(verts, edges)


def banana(multiplicity):
    """Two vertices joined by `multiplicity` parallel edges."""
    if multiplicity < 1:
        raise BadParamsError("banana needs multiplicity >= 1")
    return build(["top", "base"], [("top", "base", multiplicity)])


def petersen():
    verts = [f"o{i}" for i in range(5)] + [f"i{i}" for i in range(5)]
    edges = [(f"o{i}", f"o{(i+1) % 5}") for i in range(5)]
    edges += [(f"i{i}", f"i{(i+2) % 5}") for i in range(5)]
    edges += [(f"o{i}", f"i{i}") for i in range(5)]
    return build(verts, edges)


def grid(m, n):
    return cartesian_product(path(m), path(n))


def stacked_prism(m, n):
    return cartesian_product(cycle(m), path(n))


def torus(m, n):
    return cartesian_product(cycle(m), cycle(n))


def hypercube(n):
    if n < 1:
        raise BadParamsError("hypercube needs n >= 1")
    k2 = build(["0", "1"], [("0", "1")])
    g = k2
    for _ in range(n - 1):
        g = cartesian_product(g, k2)
    return g


def rook(m, n):
    return cartesian_product(complete(m), complete(n))


def doubled_path(m):
    """Path on 2m - 2 vertices with every edge doubled."""
    if m < 2:
        raise BadParamsError("doubled path needs m >= 2")
    n = 2 * m - 2
    verts = [f"v{i}" for i in range(n)]
    return build(verts, [(f"v{i}", f"v{i+1}", 2) for i in range(n - 1)])


def doubled_path_subdivided(m):
    """Doubled path with one edge of each pair subdivided m - 2 times."""
    if m < 2:
        raise BadParamsError("needs m >= 2")
    n = 2 * m - 2
    verts = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(n - 1):
        edges.append((f"v{i}", f"v{i+1}"))
        chain = [f"v{i}"] + [f"s{i}_{j}" for j in range(m - 2)] + [f"v{i+1}"]
        verts.extend(chain[1:-1])
        edges.extend((chain[j], chain[j + 1]) for j in range(len(chain) - 1))
    return build(verts, edges)


def multipath(n):
    """Path on n vertices with every edge replaced by n parallel edges."""
    if n < 1:
        raise BadParamsError("multipath needs n >= 1")
    verts = [f"v{i}" for i in range(n)]
    return build(verts, [(f"v{i}", f"v{i+1}", n) for i in range(n - 1)])


def banana_triangle():
    """Triangle with a pendant vertex triple-edged to each corner."""
    return rooted_product(complete(3), banana(3), "base")


def triangle_of_bulbs(n, multiplicity):
    """Triangle of complete-multigraph bulbs glued at one vertex each."""
    if n < 2:
        raise BadParamsError("bulbs need n >= 2")
    return rooted_product(complete(3), complete_multigraph(n, multiplicity), "v0")


def quadratic_gap(n):
    """Complete graph K_n with a bulb K_n^m at every vertex, m = C(n,2) + 1."""
    if n < 2:
        raise BadParamsError("quadratic gap family needs n >= 2")
    m = n * (n - 1) // 2 + 1
    return rooted_product(complete(n), complete_multigraph(n, m), "v0")


def np_gadget(base):
    """Join `base` with a same-size clique whose vertices see everything."""
    if not base.is_simple():
        raise BadParamsError("gadget base must be simple")
    n = base.n
    new = [f"g{i}" for i in range(n)]
    verts = list(base.vertices) + new
    edges = [(u, v, m) for u, v, m in base.edges()]
    edges += [(a, b) for a, b in itertools.combinations(new, 2)]
    edges += [(g, v) for g in new for v in base.vertices]
    return build(verts, edges)


def sierpinski(depth=2):
    """Triangular gasket graph of the given depth (depth 2: 15 vertices)."""
    if depth < 0:
        raise BadParamsError("depth must be >= 0")
    scale = 2 ** depth
    corners = ((0, 0), (scale, 0), (scale, scale))
    edges = set()

    def mid(p, q):
        return ((p[0] + q[0]) // 2, (p[1] + q[1]) // 2)

    def fill(a, b, c, d):
        if d == 0:
            edges.update({frozenset((a, b)), frozenset((b, c)), frozenset((a, c))})
            return
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        fill(a, ab, ca, d - 1)
        fill(ab, b, bc, d - 1)
        fill(ca, bc, c, d - 1)

    fill(*corners, depth)
    coords = sorted({p for e in edges for p in e})
    name = {p: f"r{p[0]}c{p[1]}" for p in coords}
    return build(
        [name[p] for p in coords],
        [tuple(sorted(name[p] for p in e)) for e in sorted(map(sorted, edges))],
    )


FAMILIES = {
    "path": path,
    "star": star,
    "cubic_caterpillar": cubic_caterpillar,
    "cycle": cycle,
    "complete": complete,
    "complete_multigraph": complete_multigraph,
    "complete_multipartite": complete_multipartite,
    "banana": banana,
    "petersen": petersen,
    "grid": grid,
    "stacked_prism": stacked_prism,
    "torus": torus,
    "hypercube": hypercube,
    "rook": rook,
    "doubled_path": doubled_path,
    "doubled_path_subdivided": doubled_path_subdivided,
    "multipath": multipath,
    "banana_triangle": banana_triangle,
    "triangle_of_bulbs": triangle_of_bulbs,
    "quadratic_gap": quadratic_gap,
    "sierpinski": sierpinski,
}


def family(name, *args, **kwargs):
    """Look up a named generator.  np_gadget takes a base graph spec."""
    if name == "np_gadget":
        base = kwargs.pop("base", args[0] if args else None)
        if isinstance(base, dict):
            base = graph_from_spec(base)
        if not isinstance(base, Multigraph):
            raise BadParamsError("np_gadget needs a base graph")
        return np_gadget(base)
    try:
        gen = FAMILIES[name]
    except KeyError:
        raise BadParamsError(f"unknown family {name!r}") from None
    try:
        return gen(*args, **kwargs)
    except TypeError as exc:
        raise BadParamsError(f"bad parameters for {name}: {exc}") from None


def graph_from_spec(spec):
    """Build a graph from {"family": ..., "params": ...} or explicit JSON."""
    if "family" in spec:
        params = spec.get("params", {})
        if isinstance(params, dict):
            return family(spec["family"], **params)
        return family(spec["family"], *params)
    return from_json_obj(spec)


# --------------------------------------------------------------------------
# invariants and structural operations


def edge_connectivity(g):
    """Multiplicity-weighted global minimum edge cut with a witness bipartition."""
    if g.n < 2:
        raise BadParamsError("edge connectivity needs at least two vertices")
    value, (side_a, side_b) = nx.stoer_wagner(g.to_nx(), weight="weight")
    if g.vertices[0] not in side_a:
        side_a, side_b = side_b, side_a
    a = tuple(sorted(side_a, key=g.index))
    b = tuple(sorted(side_b, key=g.index))
    return value, (a, b)


def brute_force_edge_connectivity(g):
    """Oracle: minimum cut over all proper bipartitions (small graphs only)."""
    table = g.cut_table()
    full = (1 << g.n) - 1
    # Fix vertex 0 on one side so each bipartition is counted once.
    best = None
    best_mask = None
    for mask in range(1, full):
        if mask & 1:
            continue
        if best is None or table[mask] < best:
            best = table[mask]
            best_mask = mask
    side = tuple(v for i, v in enumerate(g.vertices) if (best_mask >> i) & 1)
    rest = tuple(v for i, v in enumerate(g.vertices) if not (best_mask >> i) & 1)
    return best, (rest, side)


def minimum_cut_between(g, source_set, sink_set):
    """Max-flow min-cut between two disjoint vertex sets (sets contracted)."""
    src = frozenset(source_set)
    dst = frozenset(sink_set)
    if src & dst:
        raise BadParamsError("cut endpoints must be disjoint")
    flow = nx.Graph()
    SRC, DST = ("#src",), ("#dst",)

    def node_of(v):
        if v in src:
            return SRC
        if v in dst:
            return DST
        return v

    flow.add_node(SRC)
    flow.add_node(DST)
    for u, v, m in g.edges():
        a, b = node_of(u), node_of(v)
        if a == b:
            continue
        if flow.has_edge(a, b):
            flow[a][b]["capacity"] += m
        else:
            flow.add_edge(a, b, capacity=m)
    value, (s_side, t_side) = nx.minimum_cut(flow, SRC, DST)
    side = {v for v in s_side if v not in (SRC, DST)} | src
    return value, _connected_witness(g, side, src, dst)


def _connected_witness(g, side, src, dst):
    """Shrink a cut side so that both sides induce connected subgraphs."""
    side_mask = 0
    for v in side:
        side_mask |= 1 << g.index(v)
    a_mask = _component_of(g, side_mask, next(iter(src)))
    full = (1 << g.n) - 1
    b_mask = _component_of(g, full & ~a_mask, next(iter(dst)))
    c_mask = full & ~b_mask
    a = tuple(v for i, v in enumerate(g.vertices) if (c_mask >> i) & 1)
    b = tuple(v for i, v in enumerate(g.vertices) if (b_mask >> i) & 1)
    return a, b


def _component_of(g, mask, v):
    start = 1 << g.index(v)
    seen = start
    frontier = start
    adj = g.adjacency_masks()
    while frontier:
        nxt = 0
        m = frontier
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= adj[i] & mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def pairwise_min_cuts(g):
    """All-pairs minimum cut values by scanning every bipartition (n <= 16)."""
    table = g.cut_table()
    n = g.n
    full = (1 << n) - 1
    best = [[float("inf")] * n for _ in range(n)]
    for mask in range(1, full):
        c = table[mask]
        inside = mask
        outside = full & ~mask
        mi = inside
        while mi:
            i = (mi & -mi).bit_length() - 1
            mi &= mi - 1
            row = best[i]
            mo = outside
            while mo:
                j = (mo & -mo).bit_length() - 1
                mo &= mo - 1
                if c < row[j]:
                    row[j] = c
                    best[j][i] = c
    return best


def independence_number(g):
    """Exact maximum independent set size with a witness (parallel edges collapse)."""
    n = g.n
    adj = g.adjacency_masks()
    best = [0, 0]  # size, mask

    def grow(candidates, current_mask, size):
        if size + bin(candidates).count("1") <= best[0]:
            return
        if candidates == 0:
            if size > best[0]:
                best[0] = size
                best[1] = current_mask
            return
        # branch on the candidate of highest remaining valence
        pick = None
        pick_deg = -1
        m = candidates
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            d = bin(adj[i] & candidates).count("1")
            if d > pick_deg:
                pick_deg = d
                pick = i
        grow(candidates & ~(1 << pick) & ~adj[pick], current_mask | (1 << pick), size + 1)
        grow(candidates & ~(1 << pick), current_mask, size)

    grow((1 << n) - 1, 0, 0)
    witness = tuple(v for i, v in enumerate(g.vertices) if (best[1] >> i) & 1)
    return best[0], witness


def brute_force_independence_number(g):
    """Oracle: maximum over all subsets (n <= 16)."""
    n = g.n
    adj = g.adjacency_masks()
    best = 0
    for mask in range(1 << n):
        ok = True
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            if adj[i] & mask:
                ok = False
                break
        if ok:
            best = max(best, bin(mask).count("1"))
    return best


def subdivide(g, edge, new_name=None):
    """Replace one copy of edge (u, v) by a path u - w - v through a new vertex."""
    u, v = edge
    m = g.multiplicity(u, v)
    if m < 1:
        raise UnknownVertexError(f"no edge between {u} and {v}")
    if new_name is None:
        k = 0
        while g.has_vertex(f"s{k}"):
            k += 1
        new_name = f"s{k}"
    elif g.has_vertex(new_name):
        raise BadParamsError(f"vertex {new_name!r} already exists")
    edges = []
    for a, b, mult in g.edges():
        if {a, b} == {u, v}:
            if mult > 1:
                edges.append((a, b, mult - 1))
        else:
            edges.append((a, b, mult))
    edges.append((u, new_name, 1))
    edges.append((new_name, v, 1))
    return build(list(g.vertices) + [new_name], edges)


def smooth(g, vertex):
    """Remove a 2-valent vertex with two distinct neighbors, joining them."""
    if g.valence(vertex) != 2:
        raise NotTwoValentError(f"{vertex} is not 2-valent")
    nbrs = g.neighbors(vertex)
    if len(nbrs) != 2:
        raise NotTwoValentError(f"{vertex} does not have two distinct neighbors")
    u, w = nbrs
    edges = [(a, b, m) for a, b, m in g.edges() if vertex not in (a, b)]
    edges.append((u, w, 1))
    return build([v for v in g.vertices if v != vertex], edges)


def two_valent_vertices(g):
    """Vertices eligible for smoothing."""
    return tuple(
        v for v in g.vertices if g.valence(v) == 2 and len(g.neighbors(v)) == 2
    )


def bridges(g):
    """Edges of multiplicity 1 whose deletion disconnects the graph."""
    out = []
    for u, v, m in g.edges():
        if m != 1:
            continue
        mask = (1 << g.n) - 1
        i, j = g.index(u), g.index(v)
        # temporarily ignore the edge during a BFS from u
        adj = list(g.adjacency_masks())
        adj[i] &= ~(1 << j)
        adj[j] &= ~(1 << i)
        seen = 1 << i
        frontier = seen
        while frontier:
            nxt = 0
            mm = frontier
            while mm:
                a = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                nxt |= adj[a] & mask & ~seen
            seen |= nxt
            frontier = nxt
        if not (seen >> j) & 1:
            out.append((u, v))
    return out


def delete_bridge_split(g, edge):
    """Delete a bridge and return the two components (first contains edge[0])."""
    u, v = edge
    if (u, v) not in bridges(g) and (v, u) not in bridges(g):
        raise NotABridgeError(f"({u}, {v}) is not a bridge")
    edges = [(a, b, m) for a, b, m in g.edges() if {a, b} != {u, v}]
    comp_u = _component_edges(g.vertices, edges, u)
    comp_v = _component_edges(g.vertices, edges, v)
    return comp_u, comp_v


def _component_edges(vertices, edges, seed):
    adj = {}
    for a, b, _ in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = {seed}
    stack = [seed]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    verts = [v for v in vertices if v in seen]
    kept = [(a, b, m) for a, b, m in edges if a in seen]
    return build(verts, kept)


def induced_subgraph(g, subset):
    """Induced sub-multigraph; raises if the result is disconnected."""
    comps = induced_components(g, subset)
    if len(comps) != 1:
        raise DisconnectedError("induced subgraph is disconnected")
    return comps[0]


def induced_components(g, subset):
    """Connected components of the induced sub-multigraph, canonical order."""
    subset = set(subset)
    for v in subset:
        g.index(v)
    if not subset:
        return []
    edges = [(a, b, m) for a, b, m in g.edges() if a in subset and b in subset]
    remaining = [v for v in g.vertices if v in subset]
    comps = []
    seen = set()
    for v in remaining:
        if v in seen:
            continue
        comp = _component_edges(remaining, edges, v)
        seen.update(comp.vertices)
        comps.append(comp)
    return comps
