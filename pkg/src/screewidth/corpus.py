"""Regression corpus: a catalog of known invariant values with a runner.

Records live as versioned JSON files under corpusdata/.  Each record names a
graph, states a claim, and carries a list of machine checks that re-derive
the claim.  Directions we cannot re-derive at desk scale (values taken from
prior work) appear as "cited" checks: they are reported but never counted as
machine-proven.  Records marked open are skipped entirely.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import ClaimFailedError
from . import chipfiring, exactsearch, graphs, scrambles, treecut

DATA_PACKAGE = "screewidth.corpusdata"


def load_records(name_filter=None):
    records = []
    root = resources.files(DATA_PACKAGE)
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".json"):
            continue
        payload = json.loads(entry.read_text())
        records.extend(payload["records"])
    if name_filter:
        records = [
            r
            for r in records
            if name_filter in r["id"] or name_filter in r.get("group", "")
        ]
    return records


class CheckOutcome:
    __slots__ = ("op", "status", "detail")

    def __init__(self, op, status, detail=""):
        self.op = op
        self.status = status  # pass | fail | cited
        self.detail = detail


class RecordResult:
    __slots__ = ("record_id", "status", "outcomes")

    def __init__(self, record_id, status, outcomes):
        self.record_id = record_id
        self.status = status  # pass | fail | open
        self.outcomes = outcomes

    def to_json_obj(self):
        return {
            "id": self.record_id,
            "status": self.status,
            "checks": [
                {"op": o.op, "status": o.status, "detail": o.detail}
                for o in self.outcomes
            ],
        }


class CorpusReport:
    def __init__(self, results):
        self.results = results

    @property
    def failed_ids(self):
        return [r.record_id for r in self.results if r.status == "fail"]

    @property
    def counts(self):
        out = {"pass": 0, "fail": 0, "open": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def raise_if_failed(self):
        if self.failed_ids:
            raise ClaimFailedError(
                f"corpus records failed: {', '.join(self.failed_ids)}",
                self.failed_ids,
            )

    def to_json_obj(self):
        return {
            "counts": self.counts,
            "results": [r.to_json_obj() for r in self.results],
        }

    def to_table(self):
        lines = []
        width = max((len(r.record_id) for r in self.results), default=10)
        for r in self.results:
            lines.append(f"{r.record_id:<{width}}  {r.status.upper()}")
            for o in r.outcomes:
                if o.status == "fail":
                    lines.append(f"{'':<{width}}    {o.op}: {o.detail}")
        c = self.counts
        lines.append(
            f"-- {c['pass']} passed, {c['fail']} failed, {c['open']} open --"
        )
        return "\n".join(lines)


def run_corpus(name_filter=None):
    results = [run_record(r) for r in load_records(name_filter)]
    return CorpusReport(results)


def run_record(record):
    if record.get("mode") == "open":
        return RecordResult(record["id"], "open", [])
    graph = graphs.graph_from_spec(record["graph"])
    outcomes = []
    for chk in record["checks"]:
        op = chk["op"]
        try:
            handler = _HANDLERS[op]
        except KeyError:
            outcomes.append(CheckOutcome(op, "fail", f"unknown check op {op!r}"))
            continue
        try:
            outcomes.append(handler(graph, chk))
        except Exception as exc:  # deliberate: a crash is a failed claim
            outcomes.append(CheckOutcome(op, "fail", f"{type(exc).__name__}: {exc}"))
    status = "pass"
    if any(o.status == "fail" for o in outcomes):
        status = "fail"
    return RecordResult(record["id"], status, outcomes)


# --------------------------------------------------------------------------
# check handlers


def _expect(op, got, want, extra=""):
    if got == want:
        return CheckOutcome(op, "pass", f"{got}{extra}")
    return CheckOutcome(op, "fail", f"got {got}, expected {want}{extra}")


def _load_decomposition(graph, payload):
    return treecut.validate(
        graph,
        payload["tree"]["nodes"],
        payload["tree"]["links"],
        payload.get("bags", {}),
    )


def _check_cited(graph, chk):
    return CheckOutcome("cited", "cited", chk.get("note", ""))


def _check_edge_connectivity(graph, chk):
    got = graphs.edge_connectivity(graph)[0]
    return _expect("edge_connectivity", got, chk["expect"])


def _check_independence(graph, chk):
    got = graphs.independence_number(graph)[0]
    return _expect("independence", got, chk["expect"])


def _check_scw_exact(graph, chk):
    res = exactsearch.scw_exact(graph, cap=chk.get("cap", exactsearch.SCW_VERTEX_CAP))
    witness_width = treecut.width(res.witness).width
    if witness_width != res.value:
        return CheckOutcome("scw_exact", "fail", "witness width mismatch")
    return _expect("scw_exact", res.value, chk["expect"])


def _check_sn_exact(graph, chk):
    res = exactsearch.sn_exact(graph, cap=chk.get("cap", exactsearch.SN_VERTEX_CAP))
    witness_order = scrambles.order(res.witness).order
    if witness_order != res.value:
        return CheckOutcome("sn_exact", "fail", "witness order mismatch")
    return _expect("sn_exact", res.value, chk["expect"])


def _check_gonality(graph, chk):
    value, witness = chipfiring.gonality(graph, chk["max_degree"])
    if not chipfiring.has_positive_rank(witness):
        return CheckOutcome("gonality", "fail", "witness lost rank")
    return _expect("gonality", value, chk["expect"])


def _check_tcd_width(graph, chk):
    dec = _load_decomposition(graph, chk["decomposition"])
    rep = treecut.width(dec)
    extras = []
    for spec in chk.get("adhesions", []):
        if "link" in spec:
            size = treecut.adhesion_size(treecut.link_adhesion(dec, tuple(spec["link"])))
            label = f"link {spec['link']}"
        else:
            size = treecut.adhesion_size(treecut.node_adhesion(dec, spec["node"]))
            label = f"node {spec['node']}"
        if size != spec["size"]:
            return CheckOutcome(
                "tcd_width", "fail", f"{label} adhesion {size}, expected {spec['size']}"
            )
        extras.append(f"{label}={size}")
    for key in ("link_width", "bag_width"):
        if key in chk and getattr(rep, key) != chk[key]:
            return CheckOutcome(
                "tcd_width", "fail", f"{key} {getattr(rep, key)}, expected {chk[key]}"
            )
    return _expect("tcd_width", rep.width, chk["expect"], extra=f" ({'; '.join(extras)})" if extras else "")


def _check_scramble_order(graph, chk):
    s = scrambles.validate_scramble(graph, [tuple(e) for e in chk["eggs"]])
    rep = scrambles.order(s)
    if "hitting" in chk and rep.hitting_number != chk["hitting"]:
        return CheckOutcome(
            "scramble_order", "fail",
            f"hitting {rep.hitting_number}, expected {chk['hitting']}",
        )
    if "egg_cut" in chk:
        want = chk["egg_cut"]
        got = rep.egg_cut_number
        if want is None:
            if got != float("inf"):
                return CheckOutcome("scramble_order", "fail", f"egg cut {got}, expected none")
        elif got != want:
            return CheckOutcome("scramble_order", "fail", f"egg cut {got}, expected {want}")
    return _expect("scramble_order", rep.order, chk["expect"])


def _check_rank(graph, chk):
    d = chipfiring.Divisor(graph, chk["chips"])
    if "degree" in chk and d.degree() != chk["degree"]:
        return CheckOutcome("rank", "fail", f"degree {d.degree()}, expected {chk['degree']}")
    got = chipfiring.has_positive_rank(d)
    return _expect("rank", got, chk["expect"], extra=f" (degree {d.degree()})")


def _check_partitions(graph, chk):
    d = chipfiring.Divisor(graph, chk["chips"])
    got, cls = chipfiring.partitions_vertices(d)
    if "class_size" in chk and len(cls) != chk["class_size"]:
        return CheckOutcome(
            "partitions", "fail", f"class size {len(cls)}, expected {chk['class_size']}"
        )
    return _expect("partitions", got, chk["expect"])


def _check_divisor_decomposition(graph, chk):
    d = chipfiring.Divisor(graph, chk["chips"])
    built = chipfiring.decomposition_from_partitioning_divisor(d)
    dec = built.decomposition
    rep = treecut.width(dec)
    deg = d.degree()
    if rep.width > deg:
        return CheckOutcome(
            "divisor_decomposition", "fail", f"width {rep.width} exceeds degree {deg}"
        )
    for link in dec.links:
        if treecut.adhesion_size(treecut.link_adhesion(dec, link)) != deg:
            return CheckOutcome(
                "divisor_decomposition", "fail", f"link {link} adhesion is not {deg}"
            )
    for node in dec.nodes:
        if treecut.node_adhesion(dec, node):
            return CheckOutcome(
                "divisor_decomposition", "fail", f"node {node} adhesion not empty"
            )
    want = chk.get("expect_width", rep.width)
    return _expect("divisor_decomposition", rep.width, want)


def _check_dhar_guided(graph, chk):
    d = chipfiring.Divisor(graph, chk["chips"])
    dec, trace = chipfiring.dhar_guided_decomposition(graph, d, script=chk.get("script"))
    if "expect_counterexample" in chk and trace["counterexample_candidate"] != chk["expect_counterexample"]:
        return CheckOutcome(
            "dhar_guided", "fail",
            f"counterexample flag {trace['counterexample_candidate']}",
        )
    if chk.get("expect_link_witness"):
        rep = treecut.width(dec)
        if rep.link_width < rep.bag_width:
            return CheckOutcome(
                "dhar_guided", "fail",
                f"width not achieved by a link (lw {rep.link_width}, bw {rep.bag_width})",
            )
    return _expect("dhar_guided", trace["width"], chk["expect_width"])


def _check_level_sets(graph, chk):
    d1 = chipfiring.Divisor(graph, chk["from"])
    d2 = chipfiring.Divisor(graph, chk["to"])
    _, chain, _ = chipfiring.level_set_decomposition(d1, d2)
    return _expect("level_sets", len(chain), chk["expect_moves"])


def _check_all_optima(graph, chk):
    value = chk["value"]
    res = exactsearch.scw_exact(graph, split_bridges=False)
    if res.value != value:
        return CheckOutcome("all_optima", "fail", f"screewidth {res.value}, expected {value}")
    count = 0
    for dec in exactsearch.enumerate_optimal_decompositions(graph, value):
        count += 1
        if chk["property"] == "empty-bag":
            ok = any(not dec.bags[b] for b in dec.nodes)
        elif chk["property"] == "disconnected-bag":
            ok = any(
                dec.bags[b]
                and not graph.connected_mask(
                    sum(1 << graph.index(v) for v in dec.bags[b])
                )
                for b in dec.nodes
            )
        else:
            return CheckOutcome("all_optima", "fail", f"unknown property {chk['property']}")
        if not ok:
            return CheckOutcome(
                "all_optima", "fail",
                f"an optimal decomposition violates {chk['property']}",
            )
    if count == 0:
        return CheckOutcome("all_optima", "fail", "no optimal decompositions found")
    return CheckOutcome("all_optima", "pass", f"{count} optima, all satisfy {chk['property']}")


def _check_delta_bound(graph, chk):
    got = exactsearch.delta_bound_check(graph)
    return _expect("delta_bound", got, chk["expect"])


def _check_caterpillar_width(graph, chk):
    dec = treecut.caterpillar_decomposition(graph, chk["n"])
    rep = treecut.width(dec)
    return _expect("caterpillar_width", rep.width, chk["expect"])


def _check_geodesics_max(graph, chk):
    got = max(exactsearch.geodesics_through(graph, v) for v in graph.vertices)
    return _expect("geodesics_max", got, chk["expect"])


def _check_sandwich(graph, chk):
    scramble_certs = [
        scrambles.validate_scramble(graph, [tuple(e) for e in eggs])
        for eggs in chk.get("scrambles", [])
    ]
    decomposition_certs = [
        _load_decomposition(graph, payload)
        for payload in chk.get("decompositions", [])
    ]
    divisor_certs = [
        chipfiring.Divisor(graph, chips) for chips in chk.get("divisors", [])
    ]
    ledgers = exactsearch.sandwich(
        graph,
        scramble_certs,
        decomposition_certs,
        divisor_certs,
        use_exact=chk.get("use_exact", False),
    )
    for inv, want in chk["expect"].items():
        ledger = ledgers[inv]
        got = [ledger.lower.value, ledger.upper.value]
        if got != list(want):
            return CheckOutcome(
                "sandwich", "fail", f"{inv} interval {got}, expected {want}"
            )
    return CheckOutcome("sandwich", "pass", str(chk["expect"]))


def _check_normalize(graph, chk):
    dec = _load_decomposition(graph, chk["decomposition"])
    before = treecut.width(dec).width
    norm = treecut.normalize_empty_bags(dec)
    after = treecut.width(norm).width
    if after > before:
        return CheckOutcome("normalize", "fail", f"width grew {before} -> {after}")
    for b in norm.nodes:
        if not norm.bags[b] and norm.valence(b) != 3:
            return CheckOutcome("normalize", "fail", f"empty bag {b} has valence {norm.valence(b)}")
    leaves = [b for b in norm.nodes if norm.valence(b) <= 1]
    empties = [b for b in norm.nodes if not norm.bags[b]]
    if len(norm.nodes) > 1 and len(empties) > max(0, len(leaves) - 2):
        return CheckOutcome(
            "normalize", "fail",
            f"{len(empties)} empty bags with only {len(leaves)} leaves",
        )
    return CheckOutcome("normalize", "pass", f"width {before} -> {after}")


_HANDLERS = {
    "cited": _check_cited,
    "edge_connectivity": _check_edge_connectivity,
    "independence": _check_independence,
    "scw_exact": _check_scw_exact,
    "sn_exact": _check_sn_exact,
    "gonality": _check_gonality,
    "tcd_width": _check_tcd_width,
    "scramble_order": _check_scramble_order,
    "rank": _check_rank,
    "partitions": _check_partitions,
    "divisor_decomposition": _check_divisor_decomposition,
    "dhar_guided": _check_dhar_guided,
    "level_sets": _check_level_sets,
    "all_optima": _check_all_optima,
    "delta_bound": _check_delta_bound,
    "caterpillar_width": _check_caterpillar_width,
    "geodesics_max": _check_geodesics_max,
    "sandwich": _check_sandwich,
    "normalize": _check_normalize,
}
