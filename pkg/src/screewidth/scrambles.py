"""Scrambles: families of connected vertex sets (eggs) and their order.

The order of a scramble is min(h, e) where h is the minimum hitting-set size
and e the minimum egg-cut size.  Two eggs sharing a vertex can never be
separated, so a scramble whose eggs pairwise intersect has no egg-cut at all;
we report e as math.inf in that case (a distinguished value, never a sentinel
integer).  In particular a one-egg scramble has e = inf and order h = 1.
"""

from __future__ import annotations

import json
import math

from .errors import (
    DisconnectedEggError,
    EmptyEggError,
    GraphMismatchError,
    UnknownVertexError,
)
from . import graphs
from .graphs import VertexSet


class Scramble:
    __slots__ = ("graph", "eggs")

    def __init__(self, graph, eggs):
        self.graph = graph
        self.eggs = tuple(eggs)

    def egg_masks(self):
        return [egg.mask() for egg in self.eggs]

    def to_cert_obj(self, claimed_order=None):
        obj = {
            "graph_hash": self.graph.graph_hash,
            "eggs": [egg.sorted() for egg in self.eggs],
        }
        if claimed_order is None:
            claimed_order = order(self).order
        obj["claimed_order"] = claimed_order
        return obj

    def dumps(self, claimed_order=None):
        return json.dumps(self.to_cert_obj(claimed_order), indent=2, sort_keys=True)

    def __repr__(self):
        return f"Scramble({len(self.eggs)} eggs on {self.graph!r})"


class OrderReport:
    """h, e and order with the witnesses achieving them."""

    __slots__ = (
        "hitting_number",
        "egg_cut_number",
        "order",
        "witness_hitting_set",
        "witness_cut",
    )

    def __init__(self, hitting_number, egg_cut_number, witness_hitting_set, witness_cut):
        self.hitting_number = hitting_number
        self.egg_cut_number = egg_cut_number
        self.order = min(hitting_number, egg_cut_number)
        self.witness_hitting_set = witness_hitting_set
        self.witness_cut = witness_cut

    def to_json_obj(self):
        finite = self.egg_cut_number != math.inf
        return {
            "order": self.order,
            "hitting_number": self.hitting_number,
            "egg_cut_number": self.egg_cut_number if finite else None,
            "witness_hitting_set": list(self.witness_hitting_set),
            "witness_cut": (
                {
                    "edges": [[u, v, m] for (u, v), m in sorted(self.witness_cut[0].items())],
                    "sides": [list(self.witness_cut[1][0]), list(self.witness_cut[1][1])],
                }
                if self.witness_cut
                else None
            ),
        }

    def __repr__(self):
        return (
            f"OrderReport(order={self.order}, h={self.hitting_number}, "
            f"e={self.egg_cut_number})"
        )


def validate_scramble(graph, eggs):
    """Eggs must be nonempty, induce connected subgraphs, and be distinct."""
    vsets = []
    seen = set()
    for raw in eggs:
        members = frozenset(raw)
        if not members:
            raise EmptyEggError("empty egg")
        for v in members:
            if not graph.has_vertex(v):
                raise UnknownVertexError(f"unknown vertex {v!r} in egg")
        vs = VertexSet(graph, members)
        if not graph.connected_mask(vs.mask()):
            raise DisconnectedEggError(f"egg {sorted(members)} induces a disconnected subgraph")
        if members in seen:
            raise EmptyEggError(f"duplicate egg {sorted(members)}")
        seen.add(members)
        vsets.append(vs)
    return Scramble(graph, vsets)


def from_cert_obj(graph, obj):
    if obj.get("graph_hash") != graph.graph_hash:
        raise GraphMismatchError(
            f"certificate is for graph {obj.get('graph_hash')}, got {graph.graph_hash}"
        )
    return validate_scramble(graph, obj["eggs"])


def hitting_number(scramble):
    """Exact minimum hitting set by branch and bound over the eggs."""
    g = scramble.graph
    masks = scramble.egg_masks()
    if not masks:
        return 0, ()
    n = g.n
    best = [n + 1, 0]

    def packing_bound(eggs):
        # greedy disjoint eggs: each needs its own hitter
        used = 0
        count = 0
        for e in sorted(eggs, key=lambda m: bin(m).count("1")):
            if not e & used:
                used |= e
                count += 1
        return count

    def search(eggs, chosen_mask, chosen):
        if not eggs:
            if chosen < best[0]:
                best[0] = chosen
                best[1] = chosen_mask
            return
        if chosen + packing_bound(eggs) >= best[0]:
            return
        target = min(eggs, key=lambda m: (bin(m).count("1"), m))
        m = target
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            bit = 1 << i
            rest = [e for e in eggs if not e & bit]
            search(rest, chosen_mask | bit, chosen + 1)

    search(masks, 0, 0)
    witness = tuple(v for i, v in enumerate(g.vertices) if (best[1] >> i) & 1)
    return best[0], witness


def egg_cut_number(scramble):
    """Exact minimum egg-cut: min cut over vertex-disjoint egg pairs.

    Returns (value, (edge_multiset, (A, B)))) where both sides of the witness
    bipartition induce connected subgraphs, or (math.inf, None) when every
    pair of eggs intersects.
    """
    g = scramble.graph
    eggs = scramble.eggs
    best = math.inf
    witness = None
    for i in range(len(eggs)):
        for j in range(i + 1, len(eggs)):
            a, b = eggs[i], eggs[j]
            if a.members & b.members:
                continue
            value, (side_a, side_b) = graphs.minimum_cut_between(g, a.members, b.members)
            if value < best:
                best = value
                edges = {}
                in_a = set(side_a)
                for u, v, m in g.edges():
                    if (u in in_a) != (v in in_a):
                        edges[(u, v)] = m
                witness = (edges, (side_a, side_b))
    return best, witness


def order(scramble):
    h, hit_witness = hitting_number(scramble)
    e, cut_witness = egg_cut_number(scramble)
    return OrderReport(h, e, hit_witness, cut_witness)


def brute_force_hitting_number(scramble):
    """Oracle: smallest hitting set by enumerating all vertex subsets."""
    g = scramble.graph
    masks = scramble.egg_masks()
    n = g.n
    for size in range(n + 1):
        for mask in range(1 << n):
            if bin(mask).count("1") != size:
                continue
            if all(mask & e for e in masks):
                return size
    return n


def brute_force_egg_cut_number(scramble):
    """Oracle: try all edge subsets in increasing size (edge count <= ~14)."""
    import itertools

    g = scramble.graph
    units = []
    for u, v, m in g.edges():
        units.extend([(u, v)] * m)
    egg_sets = [frozenset(e.members) for e in scramble.eggs]

    def components_without(removed_indices):
        removed = {}
        for k in removed_indices:
            removed[units[k]] = removed.get(units[k], 0) + 1
        adj = {v: set() for v in g.vertices}
        for u, v, m in g.edges():
            if m - removed.get((u, v), 0) > 0:
                adj[u].add(v)
                adj[v].add(u)
        comps = []
        seen = set()
        for v in g.vertices:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    for size in range(len(units) + 1):
        for combo in itertools.combinations(range(len(units)), size):
            comps = components_without(combo)
            if len(comps) < 2:
                continue
            with_egg = 0
            for comp in comps:
                if any(egg <= comp for egg in egg_sets):
                    with_egg += 1
            if with_egg >= 2:
                return size
    return math.inf
