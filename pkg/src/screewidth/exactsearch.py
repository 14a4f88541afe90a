"""Exact screewidth and scramble number at desk scale, plus sandwich logic.

The screewidth search enumerates set partitions of the vertices into bags
(restricted-growth order over forced-together atoms) and, for each partition,
solves an exact tree-arrangement problem over the bags by dynamic programming
on bag subsets: a subtree hanging below a link is rooted either at a bag node
with any family of child subtrees, or at an empty trivalent node with exactly
two.  Empty leaves are never generated and empty nodes are trivalent, which
is lossless for the minimum.

Pairs of vertices whose pairwise min cut exceeds the width threshold are
contracted into atoms before partitioning: separating them would force a
link adhesion above the threshold.

The scramble number search runs a threshold test: an order >= t scramble
exists iff one side of every connected bipartition with cut < t can be
banned from containing eggs while the surviving connected sets still have
hitting number >= t.  Branching over those bans with exact hitting-set
pruning decides each threshold.
"""

from __future__ import annotations

import json

from .errors import (
    BudgetExceededError,
    InconsistentCertificatesError,
    NotATreeError,
    PreconditionFailedError,
)
from . import chipfiring, graphs, scrambles, treecut

DEFAULT_BUDGET = 50_000_000
SCW_VERTEX_CAP = 9
SN_VERTEX_CAP = 8

_INF = float("inf")


class Budget:
    """Explicit node-expansion counter; exceeding it is an error, never a
    silent fallback."""

    __slots__ = ("limit", "used")

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def tick(self, amount=1):
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceededError(
                f"search budget of {self.limit} node expansions exhausted"
            )


class SearchResult:
    __slots__ = ("value", "witness", "expanded")

    def __init__(self, value, witness, expanded):
        self.value = value
        self.witness = witness
        self.expanded = expanded

    def __repr__(self):
        return f"SearchResult(value={self.value}, expanded={self.expanded})"


# --------------------------------------------------------------------------
# screewidth


def _atoms_for_threshold(graph, mu, w):
    """Union-find contraction of pairs whose min cut exceeds the threshold."""
    n = graph.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if mu[i][j] > w:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), 0)
        groups[find(i)] |= 1 << i
    return [groups[r] for r in sorted(groups)]


def _iter_partitions(atoms, sizes, max_bag, budget):
    """Set partitions of the atoms into bags of at most max_bag vertices."""
    k = len(atoms)
    bags = []

    def rec(i):
        if i == k:
            yield list(bags)
            return
        budget.tick()
        a_mask, a_size = atoms[i], sizes[i]
        for b in range(len(bags)):
            m, s = bags[b]
            if s + a_size <= max_bag:
                bags[b] = (m | a_mask, s + a_size)
                yield from rec(i + 1)
                bags[b] = (m, s)
        if a_size <= max_bag:
            bags.append((a_mask, a_size))
            yield from rec(i + 1)
            bags.pop()

    yield from rec(0)


class _TreeArranger:
    """Exact minimum-width tree over the bags of one partition."""

    def __init__(self, graph, bag_masks, bag_sizes, threshold, budget):
        self.thr = threshold
        self.budget = budget
        k = len(bag_masks)
        self.k = k
        self.sizes = bag_sizes
        w = graph.weight_matrix()
        n = graph.n
        members = [
            [i for i in range(n) if (mask >> i) & 1] for mask in bag_masks
        ]
        q = [[0] * k for _ in range(k)]
        for a in range(k):
            for b in range(a + 1, k):
                total = 0
                for i in members[a]:
                    row = w[i]
                    for j in members[b]:
                        total += row[j]
                q[a][b] = total
                q[b][a] = total
        self.q = q
        self.totq = [sum(row) for row in q]
        full = 1 << k
        wsub = [0] * full
        for mask in range(1, full):
            low = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            inc = 0
            m = rest
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                inc += q[low][j]
            wsub[mask] = wsub[rest] + inc
        self.wsub = wsub
        tot = [0] * full
        for mask in range(1, full):
            low = (mask & -mask).bit_length() - 1
            tot[mask] = tot[mask & (mask - 1)] + self.totq[low]
        self._tot = tot
        self.memo = {}

    def cut(self, mask):
        return self._tot[mask] - 2 * self.wsub[mask]

    def qxy(self, a_mask, b_mask):
        # pairwise weight between two disjoint bag sets
        total = 0
        m = a_mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            row = self.q[i]
            mm = b_mask
            while mm:
                j = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                total += row[j]
        return total

    def subtree(self, s_mask):
        """Exact min over subtrees covering bag-set s (hung below a link)."""
        hit = self.memo.get(s_mask)
        if hit is not None:
            return hit
        self.budget.tick()
        best = _INF
        best_struct = None
        m = s_mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            val, struct = self.bag_rooted(i, s_mask, _INF)
            if val < best:
                best, best_struct = val, struct
        if bin(s_mask).count("1") >= 2:
            low = s_mask & -s_mask
            rest = s_mask ^ low
            sub = rest
            while True:
                s1 = sub | low
                s2 = s_mask ^ s1
                if s2:
                    q12 = self.wsub[s_mask] - self.wsub[s1] - self.wsub[s2]
                    adh = self.cut(s1) + self.cut(s2) - q12
                    if adh <= self.thr and adh < best:
                        c1, c2 = self.cut(s1), self.cut(s2)
                        if max(c1, c2) <= self.thr:
                            v1, st1 = self.subtree(s1)
                            v2, st2 = self.subtree(s2)
                            val = max(adh, c1, c2, v1, v2)
                            if val < best:
                                best = val
                                best_struct = ("empty", st1, st2)
                if sub == 0:
                    break
                sub = (sub - 1) & rest
        result = (best, best_struct)
        self.memo[s_mask] = result
        return result

    def bag_rooted(self, i, s_mask, cutoff):
        """Min width of a subtree covering s rooted at bag i."""
        r_mask = s_mask & ~(1 << i)
        qri = 0
        m = r_mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            qri += self.q[i][j]
        if r_mask == 0:
            v = self.sizes[i]
            return (v, ("bag", i, ())) if v <= self.thr else (_INF, None)
        # node adhesion once the groups are chosen:
        #   |bag| + W(R) - sum W(group) + q(R, outside)
        base = self.sizes[i] + self.wsub[r_mask] + (self.cut(r_mask) - qri)
        best = [min(cutoff, _INF), None]

        def dfs(remaining, sum_w, pen_max, groups):
            self.budget.tick()
            optimistic = max(
                pen_max, base - sum_w - self.wsub[remaining]
            )
            if optimistic >= best[0] or optimistic > self.thr:
                return
            if remaining == 0:
                val = max(pen_max, base - sum_w)
                if val < best[0]:
                    best[0] = val
                    best[1] = list(groups)
                return
            low = remaining & -remaining
            rest = remaining ^ low
            sub = rest
            while True:
                grp = sub | low
                c = self.cut(grp)
                if c <= self.thr:
                    gv, gs = self.subtree(grp)
                    pen = max(c, gv)
                    if pen <= self.thr and pen < best[0]:
                        groups.append((grp, gs))
                        dfs(remaining ^ grp, sum_w + self.wsub[grp],
                            max(pen_max, pen), groups)
                        groups.pop()
                if sub == 0:
                    break
                sub = (sub - 1) & rest
        dfs(r_mask, 0, 0, [])
        if best[1] is None:
            return _INF, None
        return best[0], ("bag", i, tuple(st for _, st in best[1]))


def _structure_to_decomposition(graph, bag_masks, root_struct):
    """Materialize a DP structure as a TreeCutDecomposition."""
    nodes = []
    links = []
    bags = {}
    counter = [0]

    def emit(struct):
        kind = struct[0]
        if kind == "bag":
            _, i, children = struct
            name = f"b{i}"
            nodes.append(name)
            mask = bag_masks[i]
            bags[name] = {
                graph.vertices[j] for j in range(graph.n) if (mask >> j) & 1
            }
            for ch in children:
                links.append((name, emit(ch)))
            return name
        _, left, right = struct
        name = f"e{counter[0]}"
        counter[0] += 1
        nodes.append(name)
        bags[name] = set()
        links.append((name, emit(left)))
        links.append((name, emit(right)))
        return name

    emit(root_struct)
    return treecut.validate(graph, nodes, links, bags)


def _feasible_width(graph, w, mu, budget):
    """A decomposition of width <= w, or None (exhaustive in normalized space)."""
    n = graph.n
    atoms = _atoms_for_threshold(graph, mu, w)
    sizes = [bin(a).count("1") for a in atoms]
    if max(sizes) > w:
        return None
    for bag_list in _iter_partitions(atoms, sizes, w, budget):
        k = len(bag_list)
        if k < 2:
            continue  # single bag means width n > w here
        masks = [m for m, _ in bag_list]
        vsizes = [s for _, s in bag_list]
        table = graph.cut_table()
        if sum(1 for m in masks if table[m] <= w) < 2:
            continue  # a tree needs two leaves, and leaves are nonempty bags
        arranger = _TreeArranger(graph, masks, vsizes, w, budget)
        root = next(i for i, m in enumerate(masks) if m & 1)
        val, struct = arranger.bag_rooted(root, (1 << k) - 1, _INF)
        if val <= w:
            return _structure_to_decomposition(graph, masks, struct)
    return None


def scw_exact(graph, budget=None, cap=SCW_VERTEX_CAP, split_bridges=True):
    """Exact screewidth with an optimal decomposition as witness."""
    if graph.n > cap:
        raise BudgetExceededError(
            f"exact screewidth capped at {cap} vertices, graph has {graph.n}"
        )
    if budget is None:
        budget = Budget()
    if graph.is_tree():
        return SearchResult(1, treecut.identity_tree_decomposition(graph), budget.used)

    if split_bridges:
        br = graphs.bridges(graph)
        if br:
            g1, g2 = graphs.delete_bridge_split(graph, br[0])
            r1 = scw_exact(g1, budget, cap, split_bridges)
            r2 = scw_exact(g2, budget, cap, split_bridges)
            joined = treecut.bridge_join(r1.witness, r2.witness, br[0], graph=graph)
            return SearchResult(max(r1.value, r2.value), joined, budget.used)

    # incumbent: the lightest of the constructive seeds
    incumbent = treecut.trivial_decomposition(graph)
    incumbent_w = graph.n
    if graph.n >= 2:
        lam, (side_a, _) = graphs.edge_connectivity(graph)
        cand = treecut.from_bipartition(graph, side_a)
        cw = treecut.width(cand).width
        if cw < incumbent_w:
            incumbent, incumbent_w = cand, cw
    if graph.is_simple():
        _, ind = graphs.independence_number(graph)
        cand = treecut.star_from_independent_set(graph, ind)
        cw = treecut.width(cand).width
        if cw < incumbent_w:
            incumbent, incumbent_w = cand, cw

    lam = graphs.edge_connectivity(graph)[0] if graph.n >= 2 else 0
    lower = max(2, min(graph.n, lam))
    mu = graphs.pairwise_min_cuts(graph)
    for w in range(lower, incumbent_w):
        found = _feasible_width(graph, w, mu, budget)
        if found is not None:
            return SearchResult(w, found, budget.used)
    return SearchResult(incumbent_w, incumbent, budget.used)


def enumerate_optimal_decompositions(graph, value, budget=None, cap=SCW_VERTEX_CAP):
    """Every width-`value` decomposition in the normalized search space.

    Used to check structural claims quantified over all optima (disconnected
    bags, forced empty bags).  Exhaustive, so keep the graphs small.
    """
    if graph.n > cap:
        raise BudgetExceededError(f"enumeration capped at {cap} vertices")
    if budget is None:
        budget = Budget()
    mu = graphs.pairwise_min_cuts(graph)
    atoms = _atoms_for_threshold(graph, mu, value)
    sizes = [bin(a).count("1") for a in atoms]
    if max(sizes) > value:
        return
    table = graph.cut_table()
    full_vertex_mask = (1 << graph.n) - 1
    if graph.n <= value:
        yield treecut.trivial_decomposition(graph)
    for bag_list in _iter_partitions(atoms, sizes, value, budget):
        k = len(bag_list)
        if k < 2:
            continue
        masks = [m for m, _ in bag_list]
        vsizes = [s for _, s in bag_list]
        if sum(1 for m in masks if table[m] <= value) < 2:
            continue
        arranger = _TreeArranger(graph, masks, vsizes, value, budget)
        root = next(i for i, m in enumerate(masks) if m & 1)
        for w, struct in _enumerate_structures(arranger, root, (1 << k) - 1):
            if w == value:
                yield _structure_to_decomposition(graph, masks, struct)


def _enumerate_structures(ar, root, full_mask):
    """All (width, structure) pairs with width <= threshold, root fixed."""

    def subtree_structs(s_mask):
        m = s_mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            yield from bag_structs(i, s_mask)
        if bin(s_mask).count("1") >= 2:
            low = s_mask & -s_mask
            rest = s_mask ^ low
            sub = rest
            while True:
                s1 = sub | low
                s2 = s_mask ^ s1
                if s2:
                    q12 = ar.wsub[s_mask] - ar.wsub[s1] - ar.wsub[s2]
                    adh = ar.cut(s1) + ar.cut(s2) - q12
                    c1, c2 = ar.cut(s1), ar.cut(s2)
                    if max(adh, c1, c2) <= ar.thr:
                        for v1, st1 in subtree_structs(s1):
                            for v2, st2 in subtree_structs(s2):
                                yield (
                                    max(adh, c1, c2, v1, v2),
                                    ("empty", st1, st2),
                                )
                if sub == 0:
                    break
                sub = (sub - 1) & rest

    def bag_structs(i, s_mask):
        ar.budget.tick()
        r_mask = s_mask & ~(1 << i)
        qri = 0
        m = r_mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            qri += ar.q[i][j]
        if r_mask == 0:
            if ar.sizes[i] <= ar.thr:
                yield ar.sizes[i], ("bag", i, ())
            return
        base = ar.sizes[i] + ar.wsub[r_mask] + (ar.cut(r_mask) - qri)

        def dfs(remaining, sum_w, pen_max, chosen):
            if remaining == 0:
                val = max(pen_max, base - sum_w)
                if val <= ar.thr:
                    yield val, ("bag", i, tuple(chosen))
                return
            if max(pen_max, base - sum_w - ar.wsub[remaining]) > ar.thr:
                return
            low = remaining & -remaining
            rest = remaining ^ low
            sub = rest
            while True:
                grp = sub | low
                if ar.cut(grp) <= ar.thr:
                    for gv, gs in subtree_structs(grp):
                        pen = max(ar.cut(grp), gv)
                        if pen <= ar.thr:
                            chosen.append(gs)
                            yield from dfs(
                                remaining ^ grp,
                                sum_w + ar.wsub[grp],
                                max(pen_max, pen),
                                chosen,
                            )
                            chosen.pop()
                if sub == 0:
                    break
                sub = (sub - 1) & rest

        yield from dfs(r_mask, 0, 0, [])

    yield from bag_structs(root, full_mask)


# --------------------------------------------------------------------------
# scramble number


def _connected_proper_subsets(graph):
    full = (1 << graph.n) - 1
    return [
        m for m in range(1, full) if graph.connected_mask(m)
    ]


def _small_cuts(graph, threshold):
    """Connected bipartitions (A, B) with cut < threshold, vertex 0 in A."""
    table = graph.cut_table()
    full = (1 << graph.n) - 1
    cuts = []
    for mask in range(1, full):
        if mask & 1:
            continue
        if table[mask] >= threshold:
            continue
        other = full ^ mask
        if graph.connected_mask(mask) and graph.connected_mask(other):
            cuts.append((table[mask], other, mask))
    cuts.sort()
    return [(a, b) for _, a, b in cuts]


def _has_small_hitting_set(eggs, limit, budget):
    """Is there a hitting set of size <= limit for the egg masks?"""
    if not eggs:
        return True
    if limit <= 0:
        return False
    budget.tick()
    # greedy disjoint packing: each disjoint egg needs its own hitter
    used = 0
    packed = 0
    for e in sorted(eggs, key=lambda m: bin(m).count("1")):
        if not e & used:
            used |= e
            packed += 1
            if packed > limit:
                return False
    target = min(eggs, key=lambda m: (bin(m).count("1"), m))
    m = target
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        bit = 1 << i
        rest = [e for e in eggs if not e & bit]
        if _has_small_hitting_set(rest, limit - 1, budget):
            return True
    return False


def _minimal_masks(masks):
    masks = sorted(set(masks), key=lambda m: bin(m).count("1"))
    out = []
    for m in masks:
        if not any(o & m == o for o in out):
            out.append(m)
    return out


def _feasible_order(graph, t, connected_sets, budget):
    """An egg family witnessing order >= t, or None.

    Candidates stay unrestricted: a banned side can exclude a small egg while
    a superset sticking out of the side survives, so minimality may only be
    applied per family (inside the hitting-set test), never up front.
    """
    cuts = _small_cuts(graph, t)
    alive0 = list(connected_sets)

    def search(ci, alive):
        budget.tick()
        if _has_small_hitting_set(alive, t - 1, budget):
            return None
        if ci == len(cuts):
            return alive
        a, b = cuts[ci]
        inside_a = any(e & ~a == 0 for e in alive)
        inside_b = any(e & ~b == 0 for e in alive)
        if not (inside_a and inside_b):
            return search(ci + 1, alive)
        result = search(ci + 1, [e for e in alive if e & ~a])
        if result is not None:
            return result
        return search(ci + 1, [e for e in alive if e & ~b])

    return search(0, alive0)


def sn_exact(graph, budget=None, cap=SN_VERTEX_CAP, upper_hint=None):
    """Exact scramble number with a maximum-order scramble as witness."""
    if graph.n > cap:
        raise BudgetExceededError(
            f"exact scramble number capped at {cap} vertices, graph has {graph.n}"
        )
    if budget is None:
        budget = Budget()
    if graph.n == 1:
        only = scrambles.validate_scramble(graph, [graph.vertices])
        return SearchResult(1, only, budget.used)
    connected_sets = _connected_proper_subsets(graph)
    upper = min(graph.n, upper_hint) if upper_hint else graph.n
    for t in range(upper, 1, -1):
        family = _feasible_order(graph, t, connected_sets, budget)
        if family is not None:
            eggs = [
                tuple(v for i, v in enumerate(graph.vertices) if (m >> i) & 1)
                for m in sorted(
                    _minimal_masks(family), key=lambda m: (bin(m).count("1"), m)
                )
            ]
            witness = scrambles.validate_scramble(graph, eggs)
            return SearchResult(t, witness, budget.used)
    witness = scrambles.validate_scramble(graph, [(graph.vertices[0],)])
    return SearchResult(1, witness, budget.used)


# --------------------------------------------------------------------------
# tree lemmas


def leaf_centroid(tree):
    """A node whose removal leaves components with at most half the leaves."""
    if not tree.is_tree():
        raise NotATreeError("leaf centroid requires a tree")
    leaves = [v for v in tree.vertices if tree.valence(v) == 1]
    total = len(leaves)
    best = None
    best_profile = None
    for v in tree.vertices:
        profile = _leaf_profile(tree, v, leaves)
        if max(profile, default=0) <= total // 2:
            return v
        if best is None or max(profile) < max(best_profile):
            best, best_profile = v, profile
    raise NotATreeError("no leaf centroid found")  # pragma: no cover


def _leaf_profile(tree, node, leaves):
    leaf_set = set(leaves)
    profile = []
    seen = {node}
    for start in tree.neighbors(node):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in tree.neighbors(x):
                if y != node and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        profile.append(len(comp & leaf_set))
    return profile


def geodesics_through(tree, node):
    """Distinct leaf pairs whose connecting path contains the node."""
    if not tree.is_tree():
        raise NotATreeError("geodesic count requires a tree")
    leaves = [v for v in tree.vertices if tree.valence(v) == 1]
    if node in leaves:
        return len(leaves) - 1
    profile = _leaf_profile(tree, node, leaves)
    total = 0
    for i in range(len(profile)):
        for j in range(i + 1, len(profile)):
            total += profile[i] * profile[j]
    return total


def delta_bound_check(graph, budget=None):
    """n - independence number, for simple graphs of high minimum valence."""
    if not graph.is_simple():
        raise PreconditionFailedError("bound applies to simple graphs")
    n = graph.n
    delta = min(graph.valence(v) for v in graph.vertices)
    if delta < n // 2 + 1:
        raise PreconditionFailedError(
            f"minimum valence {delta} is below {n // 2 + 1}"
        )
    alpha, _ = graphs.independence_number(graph)
    value = n - alpha
    if n <= SCW_VERTEX_CAP:
        got = scw_exact(graph, budget).value
        if got != value:
            raise InconsistentCertificatesError(
                f"exact screewidth {got} disagrees with bound {value}"
            )
    if n <= SN_VERTEX_CAP:
        got = sn_exact(graph, budget).value
        if got != value:
            raise InconsistentCertificatesError(
                f"exact scramble number {got} disagrees with bound {value}"
            )
    return value


# --------------------------------------------------------------------------
# sandwich logic


class Bound:
    __slots__ = ("value", "method", "certificate")

    def __init__(self, value, method, certificate=None):
        self.value = value
        self.method = method
        self.certificate = certificate

    def to_json_obj(self):
        return {
            "value": self.value if self.value not in (_INF, -_INF) else None,
            "method": self.method,
            "certificate": self.certificate,
        }


class BoundsLedger:
    """Proven interval for one invariant, with certificates for both ends."""

    __slots__ = ("invariant", "lower", "upper")

    def __init__(self, invariant, lower, upper):
        self.invariant = invariant
        self.lower = lower
        self.upper = upper

    @property
    def proven_equal(self):
        return self.lower.value == self.upper.value

    def to_json_obj(self):
        return {
            "invariant": self.invariant,
            "lower": self.lower.to_json_obj(),
            "upper": self.upper.to_json_obj(),
            "proven_equal": self.proven_equal,
        }


def sandwich(
    graph,
    scramble_certs=(),
    decomposition_certs=(),
    divisor_certs=(),
    use_exact=False,
    budget=None,
):
    """Combine certificates (and optional exact solves) into proven intervals.

    Only proven inequalities are used: a scramble's order lower-bounds both
    screewidth and gonality; a decomposition's width upper-bounds nothing but
    screewidth.  Certificates that contradict those inequalities are fatal.
    """
    sn_low = Bound(1, "structural: every graph has a one-egg scramble")
    for s in scramble_certs:
        rep = scrambles.order(s)
        if rep.order > sn_low.value:
            sn_low = Bound(rep.order, "scramble-certificate", s.to_cert_obj(rep.order))

    scw_high = Bound(graph.n, "structural: trivial decomposition")
    for d in decomposition_certs:
        rep = treecut.width(d)
        if rep.width < scw_high.value:
            scw_high = Bound(rep.width, "decomposition-certificate", d.to_cert_obj(rep.width))

    gon_high = Bound(graph.n, "structural: one chip per vertex has positive rank")
    for dv in divisor_certs:
        if chipfiring.has_positive_rank(dv) and dv.degree() < gon_high.value:
            gon_high = Bound(dv.degree(), "rank-certificate", dv.to_json_obj())

    lam = graphs.edge_connectivity(graph)[0] if graph.n >= 2 else 1
    scw_low = Bound(min(graph.n, lam), "structural: any link adhesion is a cut")
    if sn_low.value > scw_low.value:
        scw_low = Bound(sn_low.value, "order bounds width", sn_low.certificate)
    gon_low = Bound(sn_low.value, "order bounds gonality", sn_low.certificate)

    sn_high = Bound(graph.n, "structural: hitting number at most n")
    if scw_high.value < sn_high.value:
        sn_high = Bound(scw_high.value, "width bounds order", scw_high.certificate)

    if use_exact:
        if graph.n <= SCW_VERTEX_CAP:
            res = scw_exact(graph, budget)
            cert = res.witness.to_cert_obj(res.value)
            scw_low = Bound(res.value, "exact-search", cert)
            scw_high = Bound(res.value, "exact-search", cert)
        if graph.n <= SN_VERTEX_CAP:
            res = sn_exact(graph, budget, upper_hint=scw_high.value)
            cert = res.witness.to_cert_obj(res.value)
            sn_low = Bound(res.value, "exact-search", cert)
            sn_high = Bound(min(sn_high.value, res.value), "exact-search", cert)

    ledgers = {
        "sn": BoundsLedger("sn", sn_low, sn_high),
        "scw": BoundsLedger("scw", scw_low, scw_high),
        "gon": BoundsLedger("gon", gon_low, gon_high),
    }
    for inv, ledger in ledgers.items():
        if ledger.lower.value > ledger.upper.value:
            raise InconsistentCertificatesError(
                f"{inv}: lower bound {ledger.lower.value} exceeds upper "
                f"{ledger.upper.value}; certificates are inconsistent"
            )
    return ledgers


def sandwich_to_json(ledgers):
    return json.dumps(
        {k: v.to_json_obj() for k, v in ledgers.items()}, indent=2, sort_keys=True
    )
