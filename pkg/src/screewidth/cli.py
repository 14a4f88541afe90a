"""Command-line front end.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage error, 3 budget exhausted.  Graph arguments
are JSON files; "-" reads from stdin so subcommands compose in pipes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import SCHEMA_VERSIONS, __version__
from . import chipfiring, corpus, exactsearch, graphs, scrambles, treecut
from .errors import BudgetExceededError, ScreewidthError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _read_graph(path):
    return graphs.from_json_obj(_read_json(path))


def _emit(obj, fmt):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        _emit_table(obj)


def _emit_table(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _emit_table(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _emit_table(v, indent + 1)
            else:
                print(f"{pad}{v}")
    else:
        print(f"{pad}{obj}")


def _parse_params(raw):
    """Family parameters: a JSON value, or bare integers."""
    params = []
    for token in raw:
        try:
            params.append(json.loads(token))
        except json.JSONDecodeError:
            params.append(token)
    return params


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"),
                        default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="node-expansion cap for exact searches")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="parallelism hint; results never depend on it")

    parser = argparse.ArgumentParser(
        prog="scree",
        parents=[common],
        description="Screewidth, scramble number and chip-firing gonality: "
        "generate graphs, compute and verify invariants, emit certificates.",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"scree {__version__} (schemas: "
        + ", ".join(f"{k}/{v}" for k, v in sorted(SCHEMA_VERSIONS.items()))
        + ")",
    )
    parser.set_defaults(
        format="json", budget=exactsearch.DEFAULT_BUDGET, threads=1
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("gen", help="generate a named family graph as JSON")
    p.add_argument("family")
    p.add_argument("params", nargs="*")

    p = add_parser("width", help="width report of a decomposition certificate")
    p.add_argument("graph")
    p.add_argument("certificate")

    p = add_parser("verify-tcd", help="verify a decomposition certificate")
    p.add_argument("graph")
    p.add_argument("certificate")

    p = add_parser("scramble-order", help="order report of a scramble certificate")
    p.add_argument("graph")
    p.add_argument("certificate")

    p = add_parser("scw-exact", help="exact screewidth (desk scale)")
    p.add_argument("graph")
    # one vertex above the library default so the documented ten-vertex
    # examples run straight from a pipe
    p.add_argument("--cap", type=int, default=exactsearch.SCW_VERTEX_CAP + 1)

    p = add_parser("sn-exact", help="exact scramble number (desk scale)")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=exactsearch.SN_VERTEX_CAP)

    p = add_parser("gonality", help="exact gonality up to a degree bound")
    p.add_argument("graph")
    p.add_argument("--max-degree", type=int, required=True)

    p = add_parser("reduce", help="reduced form of a divisor at a base vertex")
    p.add_argument("graph")
    p.add_argument("divisor")
    p.add_argument("--q", required=True)

    p = add_parser("rank", help="does the divisor have positive rank?")
    p.add_argument("graph")
    p.add_argument("divisor")

    p = add_parser("levelset", help="nested firing chain between two divisors")
    p.add_argument("graph")
    p.add_argument("divisor_from")
    p.add_argument("divisor_to")

    p = add_parser("from-divisor", help="decomposition from a partitioning divisor")
    p.add_argument("graph")
    p.add_argument("divisor")

    p = add_parser("dhar-decomp", help="guided decomposition from a divisor")
    p.add_argument("graph")
    p.add_argument("divisor")
    p.add_argument("--script", help="JSON file with recorded rounds", default=None)

    p = add_parser("sandwich", help="combine certificates into proven intervals")
    p.add_argument("graph")
    p.add_argument("--scramble", action="append", default=[])
    p.add_argument("--tcd", action="append", default=[])
    p.add_argument("--divisor", action="append", default=[])
    p.add_argument("--exact", action="store_true",
                   help="also run the exact solvers when the graph is small enough")

    p = add_parser("corpus", help="re-derive the recorded claims")
    p.add_argument("--filter", default=None)

    p = add_parser("dot", help="DOT export of a graph or decomposition")
    p.add_argument("graph")
    p.add_argument("--tcd", default=None)

    return parser


def _run(args):
    fmt = args.format
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")

    if args.command == "gen":
        g = graphs.family(args.family, *_parse_params(args.params))
        _emit(g.to_json_obj(), fmt)
        return EXIT_OK

    if args.command == "width":
        g = _read_graph(args.graph)
        dec = treecut.from_cert_obj(g, _read_json(args.certificate))
        _emit(treecut.width(dec).to_json_obj(), fmt)
        return EXIT_OK

    if args.command == "verify-tcd":
        g = _read_graph(args.graph)
        cert = _read_json(args.certificate)
        dec = treecut.from_cert_obj(g, cert)
        rep = treecut.width(dec)
        claimed = cert.get("claimed_width")
        ok = claimed is None or rep.width <= claimed
        _emit(
            {"valid": True, "width": rep.width, "claimed_width": claimed,
             "claim_holds": ok},
            fmt,
        )
        return EXIT_OK if ok else EXIT_VERIFY

    if args.command == "scramble-order":
        g = _read_graph(args.graph)
        cert = _read_json(args.certificate)
        s = scrambles.from_cert_obj(g, cert)
        rep = scrambles.order(s)
        claimed = cert.get("claimed_order")
        ok = claimed is None or rep.order >= claimed
        payload = rep.to_json_obj()
        payload["claimed_order"] = claimed
        payload["claim_holds"] = ok
        _emit(payload, fmt)
        return EXIT_OK if ok else EXIT_VERIFY

    if args.command == "scw-exact":
        g = _read_graph(args.graph)
        res = exactsearch.scw_exact(g, exactsearch.Budget(args.budget), cap=args.cap)
        _emit(
            {"screewidth": res.value, "expanded": res.expanded,
             "certificate": res.witness.to_cert_obj(res.value)},
            fmt,
        )
        return EXIT_OK

    if args.command == "sn-exact":
        g = _read_graph(args.graph)
        res = exactsearch.sn_exact(g, exactsearch.Budget(args.budget), cap=args.cap)
        _emit(
            {"scramble_number": res.value, "expanded": res.expanded,
             "certificate": res.witness.to_cert_obj(res.value)},
            fmt,
        )
        return EXIT_OK

    if args.command == "gonality":
        g = _read_graph(args.graph)
        value, witness = chipfiring.gonality(g, args.max_degree)
        _emit(chipfiring.gonality_witness_cert(g, value, witness), fmt)
        return EXIT_OK

    if args.command == "reduce":
        g = _read_graph(args.graph)
        d = chipfiring.divisor_from_json_obj(g, _read_json(args.divisor))
        reduced, script = chipfiring.q_reduce(d, args.q)
        _emit(
            {"reduced": reduced.to_json_obj(), "script": script.to_json_obj()},
            fmt,
        )
        return EXIT_OK

    if args.command == "rank":
        g = _read_graph(args.graph)
        d = chipfiring.divisor_from_json_obj(g, _read_json(args.divisor))
        _emit(
            {"degree": d.degree(),
             "positive_rank": chipfiring.has_positive_rank(d)},
            fmt,
        )
        return EXIT_OK

    if args.command == "levelset":
        g = _read_graph(args.graph)
        d1 = chipfiring.divisor_from_json_obj(g, _read_json(args.divisor_from))
        d2 = chipfiring.divisor_from_json_obj(g, _read_json(args.divisor_to))
        script, chain, inters = chipfiring.level_set_decomposition(d1, d2)
        _emit(
            {
                "script": script.to_json_obj(),
                "chain": [list(u) for u in chain],
                "intermediates": [dv.to_json_obj()["chips"] for dv in inters],
            },
            fmt,
        )
        return EXIT_OK

    if args.command == "from-divisor":
        g = _read_graph(args.graph)
        d = chipfiring.divisor_from_json_obj(g, _read_json(args.divisor))
        built = chipfiring.decomposition_from_partitioning_divisor(d)
        rep = treecut.width(built.decomposition)
        _emit(
            {
                "width": rep.width,
                "certificate": built.decomposition.to_cert_obj(rep.width),
                "node_divisors": {
                    b: dv.to_json_obj()["chips"]
                    for b, dv in built.divisor_per_node.items()
                },
            },
            fmt,
        )
        return EXIT_OK

    if args.command == "dhar-decomp":
        g = _read_graph(args.graph)
        d = chipfiring.divisor_from_json_obj(g, _read_json(args.divisor))
        script = _read_json(args.script) if args.script else None
        dec, trace = chipfiring.dhar_guided_decomposition(g, d, script=script)
        _emit(
            {"certificate": dec.to_cert_obj(trace["width"]), "trace": trace},
            fmt,
        )
        return EXIT_OK

    if args.command == "sandwich":
        g = _read_graph(args.graph)
        scr = [scrambles.from_cert_obj(g, _read_json(p)) for p in args.scramble]
        dec = [treecut.from_cert_obj(g, _read_json(p)) for p in args.tcd]
        div = [chipfiring.divisor_from_json_obj(g, _read_json(p)) for p in args.divisor]
        ledgers = exactsearch.sandwich(
            g, scr, dec, div, use_exact=args.exact,
            budget=exactsearch.Budget(args.budget),
        )
        _emit({k: v.to_json_obj() for k, v in ledgers.items()}, fmt)
        return EXIT_OK

    if args.command == "corpus":
        report = corpus.run_corpus(args.filter)
        if fmt == "json":
            print(json.dumps(report.to_json_obj(), indent=2, sort_keys=True))
        else:
            print(report.to_table())
        return EXIT_OK if not report.failed_ids else EXIT_VERIFY

    if args.command == "dot":
        g = _read_graph(args.graph)
        if args.tcd:
            dec = treecut.from_cert_obj(g, _read_json(args.tcd))
            print(dec.to_dot())
        else:
            print(g.to_dot())
        return EXIT_OK

    raise UsageError(f"unhandled command {args.command}")  # pragma: no cover


class UsageError(Exception):
    pass


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScreewidthError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
