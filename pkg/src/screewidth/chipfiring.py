"""Divisors, firing moves, reduction, rank, gonality, and the constructions
that turn positive-rank divisors into tree-cut decompositions.

A divisor assigns an integer chip count to every vertex.  Firing a subset
sends one chip along every edge leaving the subset.  The base-vertex-reduced
form (computed with the burning algorithm) is the unique canonical
representative of a divisor class and drives equivalence tests, rank
queries, and the gonality search.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

from .errors import (
    BadParamsError,
    BudgetExceededError,
    GraphMismatchError,
    NonEffectiveIntermediateError,
    NotATreeError,
    NotEquivalentError,
    NotPartitioningError,
    PreconditionFailedError,
    UnknownVertexError,
)
from .treecut import TreeCutDecomposition, validate
from .graphs import VertexSet

_REDUCE_ROUND_CAP = 200_000


class Divisor:
    """Integer chip assignment on the vertices of a graph."""

    __slots__ = ("graph", "vector")

    def __init__(self, graph, chips):
        self.graph = graph
        if isinstance(chips, dict):
            vec = [0] * graph.n
            for v, c in chips.items():
                vec[graph.index(v)] = int(c)
            self.vector = tuple(vec)
        else:
            vec = tuple(int(c) for c in chips)
            if len(vec) != graph.n:
                raise BadParamsError("chip vector length mismatch")
            self.vector = vec

    def chips(self, v):
        return self.vector[self.graph.index(v)]

    def degree(self):
        return sum(self.vector)

    def is_effective(self):
        return all(c >= 0 for c in self.vector)

    def support(self):
        return tuple(
            v for v, c in zip(self.graph.vertices, self.vector) if c != 0
        )

    def support_set(self):
        return VertexSet(self.graph, self.support())

    def to_json_obj(self):
        return {
            "graph_hash": self.graph.graph_hash,
            "chips": {
                v: c for v, c in zip(self.graph.vertices, self.vector) if c != 0
            },
        }

    def dumps(self):
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.graph is other.graph and self.vector == other.vector

    def __hash__(self):
        return hash(self.vector)

    def __repr__(self):
        return f"Divisor({dict(zip(self.graph.vertices, self.vector))})"


def divisor_from_json_obj(graph, obj):
    if obj.get("graph_hash") not in (None, graph.graph_hash):
        raise GraphMismatchError("divisor is for a different graph")
    for v in obj["chips"]:
        if not graph.has_vertex(v):
            raise UnknownVertexError(f"unknown vertex {v!r} in divisor")
    return Divisor(graph, obj["chips"])


class FiringScript:
    """How many times each vertex fired; normalized so the minimum is 0."""

    __slots__ = ("graph", "times")

    def __init__(self, graph, times):
        if isinstance(times, dict):
            vec = [0] * graph.n
            for v, c in times.items():
                vec[graph.index(v)] = int(c)
        else:
            vec = [int(c) for c in times]
        lo = min(vec) if vec else 0
        self.graph = graph
        self.times = tuple(c - lo for c in vec)

    def is_zero(self):
        return all(c == 0 for c in self.times)

    def apply(self, divisor):
        return Divisor(divisor.graph, _apply_script(divisor.graph, divisor.vector, self.times))

    def level_sets(self):
        """Nested firing chain U_1 <= ... <= U_k realizing the script."""
        top = max(self.times) if self.times else 0
        chain = []
        for step in range(1, top + 1):
            threshold = top - step + 1
            chain.append(
                tuple(
                    v
                    for v, c in zip(self.graph.vertices, self.times)
                    if c >= threshold
                )
            )
        return chain

    def to_json_obj(self):
        return {v: c for v, c in zip(self.graph.vertices, self.times) if c}

    def __repr__(self):
        return f"FiringScript({dict(zip(self.graph.vertices, self.times))})"


def _apply_script(graph, vector, times):
    w = graph.weight_matrix()
    n = graph.n
    out = list(vector)
    for i in range(n):
        for j in range(n):
            if w[i][j]:
                out[i] += w[i][j] * (times[j] - times[i])
    return out


def fire_set(divisor, subset):
    """Fire every vertex of `subset` once; debt is permitted."""
    g = divisor.graph
    inside = set(subset)
    for v in inside:
        g.index(v)
    times = [1 if v in inside else 0 for v in g.vertices]
    return Divisor(g, _apply_script(g, divisor.vector, times))


def firing_deficit(divisor, subset):
    """Largest debt created by firing `subset`; <= 0 means the move is legal."""
    fired = fire_set(divisor, subset)
    return -min(fired.vector)


# --------------------------------------------------------------------------
# reduction


def _burn(graph, vec, qi):
    """Unburnt vertices after burning from qi: the maximal legal firing set."""
    n = graph.n
    w = graph.weight_matrix()
    burnt = [False] * n
    burnt[qi] = True
    threat = list(w[qi])
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if not burnt[v] and threat[v] > vec[v]:
                burnt[v] = True
                changed = True
                row = w[v]
                for u in range(n):
                    if not burnt[u] and row[u]:
                        threat[u] += row[u]
    return [v for v in range(n) if not burnt[v]], threat


def _lift_out_of_debt(graph, vec, qi):
    """Firing counts that make every vertex other than qi nonnegative.

    Fires distance balls around qi, outermost deficit first; each layer
    vertex has at least one edge toward the previous layer, so enough
    rounds of the inner balls push chips out to any depth.
    """
    n = graph.n
    w = graph.weight_matrix()
    dist = [-1] * n
    dist[qi] = 0
    frontier = [qi]
    layers = [[qi]]
    while frontier:
        nxt = []
        for v in frontier:
            for u in range(n):
                if w[v][u] and dist[u] < 0:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        if nxt:
            layers.append(nxt)
        frontier = nxt
    dmax = len(layers) - 1
    c = [0] * (dmax + 1)  # c[k] = times the ball of radius k fires
    for j in range(dmax, 0, -1):
        needed = 0
        for v in layers[j]:
            m_in = sum(w[v][u] for u in layers[j - 1])
            m_out = sum(w[v][u] for u in layers[j + 1]) if j < dmax else 0
            shortfall = c[j] * m_out - vec[v]
            if shortfall > 0:
                needed = max(needed, -(-shortfall // m_in))
        c[j - 1] = needed
    times = [sum(c[k] for k in range(dist[v], dmax)) for v in range(n)]
    return times


def q_reduce(divisor, q):
    """Unique q-reduced divisor equivalent to the input, with its script.

    The result is nonnegative away from q and no subset avoiding q can fire
    without creating debt.
    """
    g = divisor.graph
    qi = g.index(q)
    n = g.n
    vec = list(divisor.vector)
    script = [0] * n

    if any(vec[v] < 0 for v in range(n) if v != qi):
        lift = _lift_out_of_debt(g, vec, qi)
        for v in range(n):
            script[v] += lift[v]
        vec = _apply_script(g, vec, lift)

    w = g.weight_matrix()
    rounds = 0
    while True:
        unburnt, threat = _burn(g, vec, qi)
        if not unburnt:
            break
        k = min(
            vec[v] // threat[v] for v in unburnt if threat[v] > 0
        )
        k = max(k, 1)
        inside = set(unburnt)
        for v in unburnt:
            vec[v] -= k * threat[v]
            script[v] += k
        for u in range(n):
            if u not in inside:
                inflow = sum(w[u][v] for v in unburnt if w[u][v])
                vec[u] += k * inflow
        rounds += 1
        if rounds > _REDUCE_ROUND_CAP:
            raise RuntimeError("reduction failed to stabilize")
    return Divisor(g, vec), FiringScript(g, script)


def reduced_key(divisor, base=None):
    """Canonical tuple identifying the divisor class (reduction at one vertex)."""
    g = divisor.graph
    q = base if base is not None else g.vertices[0]
    reduced, _ = q_reduce(divisor, q)
    return reduced.vector


def are_equivalent(d1, d2):
    if d1.graph is not d2.graph and d1.graph != d2.graph:
        raise BadParamsError("divisors live on different graphs")
    if d1.degree() != d2.degree():
        return False
    return reduced_key(d1) == reduced_key(d2)


def has_positive_rank(divisor):
    """True iff for every vertex some equivalent effective divisor covers it."""
    g = divisor.graph
    for q in g.vertices:
        reduced, _ = q_reduce(divisor, q)
        if reduced.chips(q) < 1:
            return False
    return True


def rank_transcripts(divisor):
    """Per-vertex reduced forms; the witness payload for rank certificates."""
    g = divisor.graph
    out = {}
    for q in g.vertices:
        reduced, script = q_reduce(divisor, q)
        out[q] = {
            "reduced": reduced.to_json_obj()["chips"],
            "script": script.to_json_obj(),
            "covered": reduced.chips(q) >= 1,
        }
    return out


# --------------------------------------------------------------------------
# equivalence solves and level sets


def firing_vector(d1, d2):
    """The normalized integer script f with d2 = d1 - L f, or NotEquivalent.

    Solves the reduced Laplacian system (base-vertex row and column removed)
    exactly over the rationals, then verifies the candidate reproduces the
    difference; the all-ones kernel is quotiented by normalizing min = 0.
    """
    g = d1.graph
    if g is not d2.graph and g != d2.graph:
        raise BadParamsError("divisors live on different graphs")
    n = g.n
    diff = [d1.vector[i] - d2.vector[i] for i in range(n)]
    if sum(diff) != 0:
        raise NotEquivalentError("divisors have different degrees")
    if n == 1:
        return [0]
    w = g.weight_matrix()
    size = n - 1
    mat = [
        [
            Fraction(sum(w[i + 1]) if i == j else -w[i + 1][j + 1])
            for j in range(size)
        ]
        for i in range(size)
    ]
    rhs = [Fraction(diff[i + 1]) for i in range(size)]
    # exact Gaussian elimination
    for col in range(size):
        pivot = next(
            (r for r in range(col, size) if mat[r][col] != 0), None
        )
        if pivot is None:
            raise NotEquivalentError("singular reduced system")
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = mat[col][col]
        for r in range(size):
            if r != col and mat[r][col] != 0:
                factor = mat[r][col] / inv
                for c in range(col, size):
                    mat[r][c] -= factor * mat[col][c]
                rhs[r] -= factor * rhs[col]
    sol = [rhs[i] / mat[i][i] for i in range(size)]
    if any(x.denominator != 1 for x in sol):
        raise NotEquivalentError("divisors are not equivalent")
    f = [0] + [int(x) for x in sol]
    check = _apply_script(g, d1.vector, f)
    if tuple(check) != d2.vector:
        raise NotEquivalentError("divisors are not equivalent")
    lo = min(f)
    return [t - lo for t in f]


def level_set_decomposition(d1, d2):
    """Firing script, nested chain and intermediates from d1 to d2.

    Both divisors must be effective and equivalent; every intermediate is
    checked for effectiveness and a failure is surfaced rather than patched.
    """
    if not d1.is_effective() or not d2.is_effective():
        raise PreconditionFailedError("level sets need effective divisors")
    f = firing_vector(d1, d2)
    g = d1.graph
    script = FiringScript(g, f)
    chain = script.level_sets()
    intermediates = [d1]
    current = d1
    for subset in chain:
        current = fire_set(current, subset)
        if not current.is_effective():
            raise NonEffectiveIntermediateError(
                f"firing {subset} creates debt at "
                f"{[v for v, c in zip(g.vertices, current.vector) if c < 0]}"
            )
        intermediates.append(current)
    if intermediates[-1].vector != d2.vector:
        raise NotEquivalentError("chain did not reach the target divisor")
    return script, chain, intermediates


# --------------------------------------------------------------------------
# divisor classes


def _compositions_colex(total, parts):
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for rest in _compositions_colex(total - last, parts - 1):
            yield rest + (last,)


def effective_class(divisor, cap=10**6):
    """All effective divisors equivalent to the input, canonically ordered.

    Filters every effective divisor of the same degree by reduced-form
    equality.  Exceeding the candidate cap raises; there is no silent
    truncation.
    """
    g = divisor.graph
    d = divisor.degree()
    if d < 0:
        return []
    import math

    count = math.comb(g.n + d - 1, d)
    if count > cap:
        raise BudgetExceededError(
            f"class enumeration would scan {count} candidates (cap {cap})"
        )
    target = reduced_key(divisor)
    out = []
    for vec in _compositions_colex(d, g.n):
        cand = Divisor(g, vec)
        if reduced_key(cand) == target:
            out.append(cand)
    out.sort(key=lambda dv: dv.vector)
    return out


def partitions_vertices(divisor, cap=10**6):
    """Whether the supports of the effective class tile the whole vertex set."""
    if not divisor.is_effective():
        raise PreconditionFailedError("divisor must be effective")
    if not has_positive_rank(divisor):
        raise PreconditionFailedError("divisor must have positive rank")
    cls = effective_class(divisor, cap)
    seen = set()
    for d in cls:
        supp = set(d.support())
        if seen & supp:
            return False, cls
        seen |= supp
    return len(seen) == divisor.graph.n, cls


class DecompositionFromDivisor:
    """Tree-cut decomposition built from a partitioning divisor class."""

    __slots__ = ("decomposition", "divisor_per_node")

    def __init__(self, decomposition, divisor_per_node):
        self.decomposition = decomposition
        self.divisor_per_node = divisor_per_node


def decomposition_from_partitioning_divisor(divisor, cap=10**6):
    """Bags are the class supports; links are single subset-firing moves.

    The relation graph failing to be a tree would contradict the theorem
    this construction implements, so that case raises NotATreeError.
    """
    ok, cls = partitions_vertices(divisor, cap)
    if not ok:
        raise NotPartitioningError("divisor class supports do not tile V(G)")
    g = divisor.graph
    names = [f"d{i}" for i in range(len(cls))]
    links = []
    for i in range(len(cls)):
        for j in range(i + 1, len(cls)):
            try:
                f = firing_vector(cls[i], cls[j])
            except NotEquivalentError:  # pragma: no cover - same class
                continue
            if set(f) == {0, 1}:
                links.append((names[i], names[j]))
    if len(links) != len(cls) - 1:
        raise NotATreeError(
            "firing-move relation is not a tree; theorem violation"
        )
    bags = {names[i]: set(cls[i].support()) for i in range(len(cls))}
    dec = validate(g, names, links, bags)
    per_node = {names[i]: cls[i] for i in range(len(cls))}
    return DecompositionFromDivisor(dec, per_node)


# --------------------------------------------------------------------------
# gonality


def gonality(graph, max_degree, class_cap=10**6):
    """Smallest degree <= max_degree of a positive-rank effective divisor.

    Enumerates effective divisors by ascending degree in colex order,
    deduplicated through the base-vertex reduced form.  Exhausting the
    budget (either the degree bound or the candidate cap) raises.
    """
    if max_degree < 0:
        raise BadParamsError("max_degree must be >= 0")
    scanned = 0
    for d in range(1, max_degree + 1):
        seen = set()
        for vec in _compositions_colex(d, graph.n):
            scanned += 1
            if scanned > class_cap:
                raise BudgetExceededError(
                    f"gonality search scanned more than {class_cap} divisors"
                )
            cand = Divisor(graph, vec)
            key = reduced_key(cand)
            if key in seen:
                continue
            seen.add(key)
            if has_positive_rank(cand):
                return d, cand
    raise BudgetExceededError(
        f"no positive-rank divisor of degree <= {max_degree}"
    )


def gonality_witness_cert(graph, degree, divisor):
    return {
        "graph_hash": graph.graph_hash,
        "gonality": degree,
        "divisor": divisor.to_json_obj()["chips"],
        "transcripts": rank_transcripts(divisor),
    }


# --------------------------------------------------------------------------
# the guided walk-through: divisors to decompositions


def _dhar_chain_to_target(divisor, target):
    """Fire maximal legal sets avoiding `target` until a chip lands on it.

    Returns (script vector, final divisor).  The fired sets are the unburnt
    sets of the burning algorithm, so each is the largest subset that moves
    chips toward the target without creating debt.
    """
    g = divisor.graph
    ti = g.index(target)
    vec = list(divisor.vector)
    times = [0] * g.n
    w = g.weight_matrix()
    rounds = 0
    while vec[ti] < 1:
        unburnt, threat = _burn(g, vec, ti)
        if not unburnt:
            raise PreconditionFailedError(
                f"no equivalent effective divisor covers {target}"
            )
        inside = set(unburnt)
        for v in unburnt:
            vec[v] -= threat[v]
            times[v] += 1
        for u in range(g.n):
            if u not in inside:
                vec[u] += sum(w[u][v] for v in unburnt if w[u][v])
        rounds += 1
        if rounds > _REDUCE_ROUND_CAP:
            raise RuntimeError("guided chain failed to reach target")
    return times, Divisor(g, vec)


def _chain_to_script(graph, chain):
    times = [0] * graph.n
    prev = set()
    for subset in chain:
        current = set(subset)
        if not current or not prev <= current:
            raise BadParamsError("firing chain must be nested and nonempty")
        if len(current) >= graph.n:
            raise BadParamsError("firing chain may not include every vertex")
        for v in current:
            times[graph.index(v)] += 1
        prev = current
    return times


def dhar_guided_decomposition(graph, divisor, script=None):
    """Build a decomposition by probing unvisited vertices with chip moves.

    Starting from the trivial decomposition, repeatedly pick the unvisited
    vertex of smallest canonical index, move chips onto it from the divisor
    associated with its bag, and split that bag along the level sets of the
    move.  With `script=None` the moves are the maximal legal firing sets
    found by the burning algorithm; passing explicit rounds
    [{"target": v, "chain": [[...], ...]}, ...] replays a recorded strategy
    instead.

    The resulting width is NOT guaranteed to stay within deg(D); when the
    guided strategy exceeds it, the trace flags a counterexample candidate
    for the open question instead of assuming the bound.
    """
    from . import treecut as tc

    if not divisor.is_effective():
        raise PreconditionFailedError("divisor must be effective")
    g = graph
    if divisor.graph is not g and divisor.graph != g:
        raise GraphMismatchError("divisor is for a different graph")

    nodes = ["b0"]
    links = []
    bags = {"b0": set(g.vertices)}
    node_divisor = {"b0": divisor}
    visited = set(divisor.support())
    trace_rounds = []
    counter = 0
    scripted = list(script) if script is not None else None

    while True:
        unvisited = [v for v in g.vertices if v not in visited]
        if not unvisited:
            break
        if scripted is not None:
            if not scripted:
                break
            step = scripted.pop(0)
            target = step["target"]
            holder = next(b for b in nodes if target in bags[b])
            stage = node_divisor[holder]
            times = _chain_to_script(g, step["chain"])
            intermediate = stage
            for subset in FiringScript(g, times).level_sets():
                intermediate = fire_set(intermediate, subset)
                if not intermediate.is_effective():
                    raise NonEffectiveIntermediateError(
                        f"scripted chain creates debt before reaching {target}"
                    )
            if intermediate.chips(target) < 1:
                raise BadParamsError(
                    f"scripted chain does not place a chip on {target}"
                )
        else:
            target = unvisited[0]
            holder = next(b for b in nodes if target in bags[b])
            stage = node_divisor[holder]
            times, _ = _dhar_chain_to_target(stage, target)

        fscript = FiringScript(g, times)
        chain = fscript.level_sets()
        top = max(fscript.times)
        old_bag = bags[holder]
        # sub-bags are the script's level classes intersected with the bag,
        # from most-fired down to unfired
        classes = []
        for level in range(top, -1, -1):
            classes.append(
                {
                    v
                    for v in old_bag
                    if fscript.times[g.index(v)] == level
                }
            )
        current = stage
        stage_divisors = [stage]
        for subset in chain:
            current = fire_set(current, subset)
            if not current.is_effective():
                raise NonEffectiveIntermediateError(
                    f"guided chain creates debt on the way to {target}"
                )
            stage_divisors.append(current)
            visited.update(current.support())
        visited.update(stage.support())

        bags[holder] = classes[0]
        node_divisor[holder] = stage_divisors[0]
        prev = holder
        for j in range(1, len(classes)):
            counter += 1
            fresh = f"b{counter}"
            nodes.append(fresh)
            links.append((prev, fresh))
            bags[fresh] = classes[j]
            node_divisor[fresh] = stage_divisors[j]
            prev = fresh
        trace_rounds.append(
            {
                "target": target,
                "node": holder,
                "chain": [list(s) for s in chain],
                "divisors": [
                    d.to_json_obj()["chips"] for d in stage_divisors
                ],
            }
        )

    dec = tc.TreeCutDecomposition(g, nodes, links, bags)
    report = tc.width(dec)
    trace = {
        "rounds": trace_rounds,
        "width": report.width,
        "degree": divisor.degree(),
        "counterexample_candidate": report.width > divisor.degree(),
    }
    return dec, trace
