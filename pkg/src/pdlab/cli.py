"""Command-line front end: ``pdlab <command> ...``.

Exit codes: 0 success or all claims confirmed, 1 check failure or a refuted
claim, 2 usage or input error, 3 undecided under the given budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from . import claims as claims_mod
from .bounds import chartrand_bounds, combined_lower_bound, lower_bounds
from .constructions import FAMILIES, INTERPRETATIONS, ConstructionSpec, build_construction
from .errors import ConstructionError, PdlabError
from .graph import (FamilySpec, Graph, all_pairs_distances, build, diameter, dump_distances,
                    family_flags, serialize, to_dot)
from .partition import Partition, is_resolving, representation_table
from .report import config_hash, dumps, envelope, to_text
from .search import SolverOptions, decide, partition_dimension
from .structure import GEODESIC, LITERAL, analyze, same_level_diagnostic

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3
VERIFY_DEFAULT_BUDGET = 200_000


class UsageError(PdlabError):
    pass


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _nonneg_float(text):
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text}")
    return v


def _default_threads():
    raw = os.environ.get("PDLAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return _positive_int(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"PDLAB_THREADS must be a positive integer, got {raw!r}") from None


def _add_output(p, formats, default):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--json", action="store_const", const="json", dest="format",
                   help="shorthand for --format json")
    p.add_argument("--out", help="write the report here instead of stdout")


def _add_solver(p):
    p.add_argument("--budget-nodes", type=_nonneg_int, default=None)
    p.add_argument("--budget-seconds", type=_nonneg_float, default=None)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help="worker processes (default: $PDLAB_THREADS or 1)")
    p.add_argument("--no-prune-twins", dest="prune_twins", action="store_false")
    p.add_argument("--no-prune-settled", dest="prune_settled", action="store_false")
    p.add_argument("--symmetry", choices=("family", "off"), default="family")


def _add_graph(p):
    p.add_argument("graph", help="family spec (complete:3, wheel:4, corona:complete:3,wheel:4) "
                                 "or edge-list file (file:PATH or a plain path)")


def build_parser():
    parser = argparse.ArgumentParser(prog="pdlab", description="Partition dimension toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a graph as an edge list, DOT or JSON")
    _add_graph(p)
    _add_output(p, ("text", "json", "dot"), "text")

    p = sub.add_parser("dist", help="all-pairs distance matrix")
    _add_graph(p)
    _add_output(p, ("text", "json"), "text")

    p = sub.add_parser("check", help="is the partition in a JSON file resolving?")
    _add_graph(p)
    p.add_argument("partition", help='JSON file {"classes": [[label, ...], ...]}')
    _add_output(p, ("text", "json"), "text")

    p = sub.add_parser("analyze", help="strong/weak equivalence and level structure")
    _add_graph(p)
    p.add_argument("--weak-mode", choices=(GEODESIC, LITERAL), default=GEODESIC)
    _add_output(p, ("text", "json"), "text")

    p = sub.add_parser("bounds", help="lower and upper bounds on pd")
    _add_graph(p)
    _add_output(p, ("text", "json"), "text")

    p = sub.add_parser("pd", help="exact partition dimension (or a single k with --k)")
    _add_graph(p)
    p.add_argument("--k", type=_positive_int, default=None,
                   help="only decide whether a resolving k-partition exists")
    _add_solver(p)
    _add_output(p, ("text", "json"), "text")

    p = sub.add_parser("construct", help="explicit partition of K_n ⊙ W_m from a construction family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=_positive_int, default=3)
    p.add_argument("--interpretation", default=None,
                   help="repair-rule set id (default: the family's first)")
    _add_output(p, ("text", "json"), "text")

    p = sub.add_parser("verify-paper", help="check every registered claim against computation")
    p.add_argument("--n-min", type=_positive_int, default=2)
    p.add_argument("--n-max", type=_positive_int, default=6)
    _add_solver(p)
    _add_output(p, ("markdown", "json", "text"), "markdown")
    return parser


# ---------------------------------------------------------------------------

def _graph(text) -> Graph:
    if ":" not in text and Path(text).is_file():
        text = f"file:{text}"
    return build(FamilySpec.parse(text))


def _solver_opts(args, budget_default=None) -> SolverOptions:
    threads = args.threads if args.threads is not None else _default_threads()
    budget = args.budget_nodes
    if budget is None and args.budget_seconds is None:
        budget = budget_default
    return SolverOptions(prune_twins=args.prune_twins, prune_settled=args.prune_settled,
                         symmetry=args.symmetry, threads=threads, budget_nodes=budget,
                         budget_seconds=args.budget_seconds)


def _graph_info(g: Graph):
    return {"graph": str(g.family) if g.family is not None else None,
            "order": g.order, "size": g.size, "flags": family_flags(g.family)}


def _config(args, **extra):
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    cfg.update(extra)
    return cfg


def cmd_gen(args):
    g = _graph(args.graph)
    if args.format == "dot":
        return EXIT_OK, to_dot(g)
    if args.format == "text":
        return EXIT_OK, serialize(g)
    body = {**_graph_info(g), "labels": list(g.labels),
            "edges": [[g.labels[u], g.labels[v]] for u, v in g.edges()]}
    return EXIT_OK, dumps(envelope("gen", _config(args), body))


def cmd_dist(args):
    g = _graph(args.graph)
    dist = all_pairs_distances(g)
    if args.format == "text":
        return EXIT_OK, dump_distances(g, dist)
    body = {**_graph_info(g), "labels": list(g.labels), "distances": [list(r) for r in dist.rows],
            "connected": dist.connected}
    return EXIT_OK, dumps(envelope("dist", _config(args), body))


def cmd_check(args):
    g = _graph(args.graph)
    dist = all_pairs_distances(g)
    try:
        text = Path(args.partition).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read partition file {args.partition}: {exc.strerror}") from None
    p = Partition.from_json(g, text, source=args.partition)
    verdict = is_resolving(dist, p)
    table = representation_table(dist, p)
    body = {
        **_graph_info(g),
        "k": p.k,
        "classes": p.label_classes(g),
        "resolving": verdict.resolving,
        "violation": None if verdict.violation is None else {
            "u": g.labels[verdict.violation[0]], "v": g.labels[verdict.violation[1]],
            "representation": list(verdict.representation)},
        "representations": {g.labels[v]: list(r) for v, r in enumerate(table)},
        "same_level_warnings": [
            {"u": g.labels[w.u], "v": g.labels[w.v], "class": w.cls + 1,
             "coinciding_classes": [c + 1 for c in w.coinciding], "full_collision": w.full_collision}
            for w in same_level_diagnostic(dist, p)],
    }
    return (EXIT_OK if verdict.resolving else EXIT_FAIL), _emit(args, "check", body)


def cmd_analyze(args):
    g = _graph(args.graph)
    dist = all_pairs_distances(g)
    body = {**_graph_info(g), **analyze(g, dist, args.weak_mode).to_dict(g)}
    return EXIT_OK, _emit(args, "analyze", body)


def cmd_bounds(args):
    g = _graph(args.graph)
    dist = all_pairs_distances(g)
    lo, hi = chartrand_bounds(g, dist)
    body = {**_graph_info(g), "diameter": diameter(g, dist), "lower_bounds": lower_bounds(g, dist),
            "combined_lower_bound": combined_lower_bound(g, dist), "chartrand": [lo, hi]}
    return EXIT_OK, _emit(args, "bounds", body)


def cmd_pd(args):
    g = _graph(args.graph)
    dist = all_pairs_distances(g)
    opts = _solver_opts(args)
    if args.k is not None:
        res = decide(g, args.k, opts, dist)
        body = {**_graph_info(g), "k": args.k,
                "exists": None if res.undecided else res.witness is not None,
                "undecided": res.undecided,
                "witness": None if res.witness is None else {"classes": res.witness.label_classes(g)},
                "stats": res.stats.to_dict()}
        code = EXIT_UNDECIDED if res.undecided else EXIT_OK
        return code, _emit(args, "pd", body)
    res = partition_dimension(g, opts, dist)
    body = {**_graph_info(g), "pd": res.pd, **res.to_dict(g)}
    return (EXIT_OK if res.solved else EXIT_UNDECIDED), _emit(args, "pd", body)


def cmd_construct(args):
    spec = ConstructionSpec(args.family, args.n, args.interpretation)
    try:
        c = build_construction(spec)
    except ConstructionError as exc:
        body = {"family": spec.family, "n": spec.n, "interpretation": spec.interpretation,
                "error": str(exc)}
        return EXIT_FAIL, _emit(args, "construct", body, [spec.interpretation])
    body = c.to_dict()
    return (EXIT_OK if c.resolving else EXIT_FAIL), _emit(args, "construct", body, [spec.interpretation])


def cmd_verify(args):
    if args.n_min > args.n_max:
        raise UsageError(f"--n-min {args.n_min} exceeds --n-max {args.n_max}")
    opts = _solver_opts(args, VERIFY_DEFAULT_BUDGET)
    reports = claims_mod.verify_claims(range(args.n_min, args.n_max + 1), opts)
    interps = [f"{fam}:{INTERPRETATIONS[fam][0].id}" for fam in FAMILIES]
    cfg = _config(args, budget_nodes=opts.budget_nodes)
    code = claims_mod.exit_status(reports)
    if args.format == "markdown":
        header = (f"# Claim verification (pdlab {__version__}, config {config_hash(cfg)}, "
                  f"n = {args.n_min}..{args.n_max}, node budget {opts.budget_nodes})")
        return code, claims_mod.to_markdown(reports, header)
    body = {"summary": claims_mod.summary(reports), "reports": [r.to_dict() for r in reports]}
    return code, _emit(args, "verify-paper", body, interps, cfg)


def _emit(args, command, body, interpretations=(), cfg=None):
    report = envelope(command, cfg if cfg is not None else _config(args), body, interpretations)
    if args.format == "json":
        return dumps(report)
    return to_text(report)


COMMANDS = {
    "gen": cmd_gen, "dist": cmd_dist, "check": cmd_check, "analyze": cmd_analyze,
    "bounds": cmd_bounds, "pd": cmd_pd, "construct": cmd_construct, "verify-paper": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = COMMANDS[args.command](args)
    except (PdlabError, ValueError) as exc:
        print(f"pdlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pdlab: error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL and args.command == "check" and args.format != "json":
        print("pdlab: partition is not resolving", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
