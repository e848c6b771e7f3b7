"""Command-line entry point.

Exit status: 0 on success or true verdicts, 1 when a verification fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .experiments import run_suite, summarize
from .fragility import all_fragilities, check_girth_bound, fragility_histogram, high_fragility_subgraph
from .generators import (
    BASIC_FAMILIES,
    gen_basic,
    gen_fragility_gap_gadget,
    gen_intersection_complement,
    gen_random,
    triangle_deleted_spanner,
)
from .graph import Graph, GraphError
from .io import Report, emit_report, format_number, read_graph, write_graph
from .resilient import cycle_union_stats, fragility_classes, make_resilient, verify_resilient
from .spanners import (
    Spanner,
    greedy_spanner,
    spanner_from_spec,
    verify_fault_tolerance,
    verify_spanner,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _number(text: str):
    q = Fraction(text)
    return int(q) if q.denominator == 1 else q


def _params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"malformed parameter {item!r}; expected key=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = _number(v.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"parameter {k!r} must be numeric, got {v!r}") from None
    return out


def _spanner_meta(s: Spanner) -> dict:
    return {"kind": s.kind, "alpha": format_number(s.alpha), "beta": format_number(s.beta)}


def _load_spanner(g: Graph, path: str, alpha=None, beta=None) -> Spanner:
    sub, meta = read_graph(path)
    if sub.n != g.n:
        raise GraphError(f"spanner file has {sub.n} vertices, host has {g.n}")
    a = alpha if alpha is not None else _number(meta.get("alpha", "1"))
    b = beta if beta is not None else _number(meta.get("beta", "0"))
    return Spanner(g, sub, a, b, kind=meta.get("kind", "file"))


def _write_report(report: Report, dest: str | None) -> None:
    text = emit_report(report)
    if dest:
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    fam, p = args.family, args.params
    meta = {"family": fam, "params": ",".join(p) or "-"}
    try:
        ints = [int(x) for x in p]
    except ValueError:
        raise UsageError(f"generator parameters must be integers, got {p}") from None
    spanner = None
    if fam in BASIC_FAMILIES:
        g = gen_basic(fam, *ints)
    elif fam == "random":
        if len(ints) != 3:
            raise UsageError("random needs N M SEED")
        weights = tuple(int(x) for x in args.weights.split(",")) if args.weights else None
        g = gen_random(*ints, two_edge_connected=args.two_edge_connected, weights=weights)
        if weights:
            meta["weights"] = args.weights
    elif fam == "intersection":
        if len(ints) != 1:
            raise UsageError("intersection needs K")
        g = gen_intersection_complement(ints[0])
    elif fam == "gadget":
        if len(ints) != 1:
            raise UsageError("gadget needs T")
        gadget = gen_fragility_gap_gadget(ints[0])
        g, spanner = gadget.graph, gadget.spanner
    else:
        raise UsageError(f"unknown family {fam!r}")
    write_graph(args.output, g, meta)
    if args.spanner_out:
        if spanner is None:
            raise UsageError("--spanner-out is only meaningful for the gadget family")
        write_graph(args.spanner_out, spanner.graph, _spanner_meta(spanner))
    return EXIT_OK


def cmd_fragility(args) -> int:
    g, _ = read_graph(args.input)
    t0 = time.perf_counter()
    fm = all_fragilities(g)
    elapsed = time.perf_counter() - t0
    verdicts, sizes = {}, {"vertices": g.n, "edges": g.m}
    if args.sigma is not None:
        high = high_fragility_subgraph(g, args.sigma, fm)
        sizes["high_fragility_edges"] = high.m
        verdicts["girth_bound"] = check_girth_bound(g, args.sigma, fm)
    report = Report(
        "fragility",
        input={"path": args.input},
        params={"sigma": args.sigma},
        sizes=sizes,
        fragility_histogram=fragility_histogram(fm),
        verdicts=verdicts,
        details={"fragility": fm},
        timings={"fragility": elapsed},
    )
    _write_report(report, args.report)
    return EXIT_OK if all(verdicts.values()) else EXIT_FALSE


def cmd_spanner(args) -> int:
    g, _ = read_graph(args.input)
    t0 = time.perf_counter()
    if args.stretch is not None:
        s = greedy_spanner(g, _number(args.stretch))
    elif args.additive2:
        s = spanner_from_spec(g, "additive2")
    elif args.fault_tolerant is not None:
        t, f = args.fault_tolerant
        s = spanner_from_spec(g, f"ft:{t}:{f}")
    else:
        s = triangle_deleted_spanner(g)
    elapsed = time.perf_counter() - t0
    write_graph(args.output, s.graph, _spanner_meta(s))
    verdicts = {}
    if args.verify:
        verdicts["spanner"] = verify_spanner(g, s, s.alpha, s.beta).ok
    report = Report(
        "spanner",
        input={"path": args.input},
        params={"kind": s.kind, "alpha": s.alpha, "beta": s.beta},
        sizes={"vertices": g.n, "edges": g.m, "spanner": s.size},
        verdicts=verdicts,
        timings={"construct": elapsed},
    )
    if args.report:
        _write_report(report, args.report)
    return EXIT_OK if all(verdicts.values()) else EXIT_FALSE


def _base_spanner(g: Graph, spec: str, sigma: int) -> tuple[Spanner, bool]:
    if spec.startswith("file:"):
        base = _load_spanner(g, spec[5:])
    else:
        base = spanner_from_spec(g, spec)
    if sigma < base.alpha + base.beta:
        if sigma < 3:
            raise UsageError(f"sigma={sigma} is below the base distortion and no {sigma}-spanner can be built")
        return greedy_spanner(g, sigma), True
    return base, False


def cmd_resilient(args) -> int:
    g, _ = read_graph(args.input)
    sigma = args.sigma
    t0 = time.perf_counter()
    base, rebuilt = _base_spanner(g, args.base, sigma)
    t1 = time.perf_counter()
    res = make_resilient(g, base, sigma)
    t2 = time.perf_counter()
    fm_host = {e: f for e, f in all_fragilities(g).items() if base.graph.has_edge(*e)}
    part = fragility_classes(g, base, sigma, fm=fm_host, frag_s=res.base_fragility)
    stats = cycle_union_stats(res.cycles)
    verdicts = {}
    violations = []
    timings = {"base": t1 - t0, "make_resilient": t2 - t1}
    if args.verify:
        t3 = time.perf_counter()
        check = verify_resilient(g, res.graph, sigma)
        verdicts["resilient"] = check.ok
        verdicts["spanner"] = verify_spanner(g, res.graph, base.alpha, base.beta).ok
        violations = check.violations
        timings["verify"] = time.perf_counter() - t3
    if args.output:
        write_graph(args.output, res.graph, _spanner_meta(res.spanner))
    report = Report(
        "resilient",
        input={"path": args.input},
        params={"sigma": sigma, "base": args.base, "base_kind": base.kind, "rebuilt_base": rebuilt,
                "alpha": base.alpha, "beta": base.beta},
        sizes={"vertices": g.n, "edges": g.m, "spanner": base.size, "resilient": res.size,
               "added_edges": len(res.added)},
        fragility_histogram={"spanner": fragility_histogram(res.base_fragility),
                             "host": fragility_histogram(fm_host)},
        partition=part.sizes(),
        cycle_stats={**stats.as_dict(), "size_bound": stats.size_bound(g.n)},
        verdicts=verdicts,
        details={"added": res.added, "violations": violations},
        timings=timings,
    )
    _write_report(report, args.report)
    return EXIT_OK if all(verdicts.values()) else EXIT_FALSE


def cmd_verify(args) -> int:
    g, _ = read_graph(args.input)
    p = _params(args.params)
    s = _load_spanner(g, args.spanner, p.get("alpha"), p.get("beta"))
    details: dict = {}
    if args.mode == "spanner":
        res = verify_spanner(g, s, s.alpha, s.beta)
        ok = res.ok
        details = {"pair": res.pair, "dist_spanner": res.dist_s, "dist_host": res.dist_g,
                   "violations": res.violations}
        params = {"alpha": s.alpha, "beta": s.beta}
    elif args.mode == "fault":
        t = p.get("t", s.alpha)
        f = int(p.get("f", 1))
        res = verify_fault_tolerance(g, s, t, f)
        ok = res.ok
        details = {"failed": res.failed, "pair": res.pair, "dist_spanner": res.dist_s,
                   "dist_host": res.dist_g, "violations": res.violations}
        params = {"t": t, "f": f}
    else:
        if "sigma" not in p:
            raise UsageError("resilient mode needs --params sigma=N")
        sigma = p["sigma"]
        res = verify_resilient(g, s, sigma)
        ok = res.ok
        details = {"violations": res.violations, "checked": res.checked}
        params = {"sigma": sigma}
    report = Report(
        "verify",
        input={"path": args.input, "spanner": args.spanner},
        params={"mode": args.mode, **params},
        sizes={"vertices": g.n, "edges": g.m, "spanner": s.size},
        verdicts={args.mode: ok},
        details=details,
    )
    _write_report(report, args.report)
    return EXIT_OK if ok else EXIT_FALSE


def _flatten(row: dict, prefix: str = "") -> dict:
    flat = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        else:
            flat[key] = v
    return flat


def cmd_experiment(args) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    t0 = time.perf_counter()
    rows = run_suite(args.suite, sizes, args.seeds, jobs=args.jobs, verify=args.verify)
    elapsed = time.perf_counter() - t0
    summary = summarize(args.suite, rows)
    if args.csv:
        flat = [_flatten(r) for r in rows]
        columns = sorted({k for r in flat for k in r})
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            for r in flat:
                writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    figures = []
    if args.figures:
        from .plotting import render_suite

        figures = [str(p) for p in render_suite(args.suite, rows, args.figures)]
    verdicts = {}
    if args.suite == "correctness":
        verdicts = {"resilient_and_spanner": summary["violating_runs"] == 0, "new_le_2n": summary["all_new_le_2n"]}
    elif args.suite == "girth":
        verdicts = {"girth_bound": summary["failures"] == 0}
    elif args.suite == "size":
        verdicts = {"contains_base": summary["all_contain_base"], "verified": summary["all_verified"]}
    report = Report(
        "experiment",
        input={"suite": args.suite, "sizes": sizes, "seeds": args.seeds},
        params={"verify": args.verify},
        verdicts=verdicts,
        details={"summary": summary, "rows": rows, "figures": figures},
        timings={"total": elapsed},
    )
    _write_report(report, args.report)
    return EXIT_OK if all(verdicts.values()) else EXIT_FALSE


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resilient-spanners",
        description="Edge fragility, spanners and sigma-resilient augmentation of undirected graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("family", help=f"one of {', '.join(sorted(BASIC_FAMILIES))}, random, intersection, gadget")
    p.add_argument("params", nargs="*", help="family parameters (integers)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--weights", help="integer weight range lo,hi for random graphs")
    p.add_argument("--two-edge-connected", action="store_true", help="random graphs without bridges")
    p.add_argument("--spanner-out", help="gadget only: also write its fault-tolerant spanner")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fragility", help="per-edge fragility report")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--sigma", type=int)
    p.add_argument("--report")
    p.set_defaults(func=cmd_fragility)

    p = sub.add_parser("spanner", help="build a base spanner")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--stretch", metavar="T")
    kind.add_argument("--additive2", action="store_true")
    kind.add_argument("--fault-tolerant", nargs=2, type=int, metavar=("T", "F"))
    kind.add_argument("--triangle-deleted", action="store_true",
                      help="drop one edge per triangle (graphs where every edge is on exactly one triangle)")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--report")
    p.set_defaults(func=cmd_spanner)

    p = sub.add_parser("resilient", help="augment a spanner into a sigma-resilient one")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--base", default="greedy:3", help="greedy:T, additive2, ft:T[:F] or file:PATH")
    p.add_argument("-o", "--output")
    p.add_argument("--report")
    p.add_argument("--no-verify", dest="verify", action="store_false")
    p.set_defaults(func=cmd_resilient)

    p = sub.add_parser("verify", help="check a spanner file against its host")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-s", "--spanner", required=True)
    p.add_argument("--mode", choices=("spanner", "fault", "resilient"), required=True)
    p.add_argument("--params", help="comma-separated key=value (alpha, beta, t, f, sigma)")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="run a seeded experiment suite")
    p.add_argument("--suite", choices=("size", "correctness", "girth", "fragility"), required=True)
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--report")
    p.add_argument("--csv", help="also write one delimited row per run")
    p.add_argument("--figures", help="directory for rendered figures")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-verify", dest="verify", action="store_false")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
    except (GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
