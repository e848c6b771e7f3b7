"""Experiment suites: seeded sweeps producing one row per run plus a summary."""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .fragility import all_fragilities, check_girth_bound, fragility_histogram, high_fragility_subgraph
from .generators import gen_random
from .graph import Graph
from .resilient import cycle_union_stats, fragility_classes, make_resilient, verify_resilient
from .spanners import Spanner, spanner_from_spec, verify_spanner

SERIAL_ENV = "RESILIENT_SPANNERS_SERIAL"

CORRECTNESS_BASES = ("greedy:3", "greedy:5", "additive2", "ft:3:1")
SIGMAS = (3, 4, 5)


def resilient_run(g: Graph, base: Spanner, sigma: int, verify: bool = True) -> dict:
    """Augment ``base`` and collect sizes, partition, cycle accounting and verdicts."""
    t0 = time.perf_counter()
    res = make_resilient(g, base, sigma)
    t1 = time.perf_counter()
    part = fragility_classes(g, base, sigma, frag_s=res.base_fragility)
    stats = cycle_union_stats(res.cycles)
    r_edges = res.graph.edge_set()
    row = {
        "n": g.n,
        "m": g.m,
        "base": base.kind,
        "sigma": sigma,
        "spanner": base.size,
        "resilient": res.size,
        "added": len(res.added),
        "contains_base": r_edges.issuperset(base.edges),
        "partition": part.sizes(),
        "cycles": stats.as_dict(),
        "new_le_2n": stats.new <= 2 * g.n,
        "union_bound": stats.size_bound(g.n),
        "union_ratio": stats.union / stats.size_bound(g.n) if stats.q else 0.0,
    }
    timings = {"make_resilient": t1 - t0}
    if verify:
        t2 = time.perf_counter()
        row["resilient_ok"] = verify_resilient(g, res.graph, sigma).ok
        row["spanner_ok"] = verify_spanner(g, res.graph, base.alpha, base.beta).ok
        timings["verify"] = time.perf_counter() - t2
    return {"row": row, "result": res, "timings": timings}


# -- per-task workers (module level so they pickle) -------------------------


def _size_task(n: int, seed: int, verify: bool) -> list[dict]:
    g = gen_random(n, min(4 * n, n * (n - 1) // 2), seed)
    out = resilient_run(g, spanner_from_spec(g, "greedy:3"), 3, verify=verify)
    row = {"seed": seed, **out["row"]}
    row["resilient_per_n15"] = row["resilient"] / n**1.5
    row["spanner_per_n15"] = row["spanner"] / n**1.5
    return [row]


def correctness_graph(n: int, seed: int) -> Graph:
    """Random connected graph whose density is drawn from the seed."""
    rng = random.Random(f"density:{n}:{seed}")
    max_m = n * (n - 1) // 2
    m = rng.randint(n - 1, max(n - 1, min(max_m, 3 * n)))
    return gen_random(n, m, seed)


def _correctness_task(n: int, seed: int, verify: bool) -> list[dict]:
    # verification is the point of this suite, so ``verify`` is ignored
    g = correctness_graph(n, seed)
    rows = []
    for spec in CORRECTNESS_BASES:
        base = spanner_from_spec(g, spec)
        for sigma in SIGMAS:
            if sigma < base.alpha + base.beta:
                continue
            out = resilient_run(g, base, sigma, verify=True)
            rows.append({"seed": seed, **out["row"]})
    return rows


def _girth_task(n: int, seed: int, verify: bool) -> list[dict]:
    g = correctness_graph(n, seed)
    fm = all_fragilities(g)
    rows = []
    for sigma in range(2, 7):
        high = high_fragility_subgraph(g, sigma, fm)
        rows.append({"n": n, "seed": seed, "m": g.m, "sigma": sigma, "high_edges": high.m,
                     "girth_ok": check_girth_bound(g, sigma, fm),
                     "exponent_bound": n ** (1 + 1 / ((sigma + 1) // 2))})
    return rows


def _fragility_task(n: int, seed: int, verify: bool) -> list[dict]:
    g = gen_random(n, min(4 * n, n * (n - 1) // 2), seed)
    s = spanner_from_spec(g, "greedy:3")
    return [{"n": n, "seed": seed, "m": g.m, "spanner": s.size,
             "host_histogram": fragility_histogram(all_fragilities(g)),
             "spanner_histogram": fragility_histogram(all_fragilities(s.graph))}]


SUITES: dict[str, Callable[[int, int, bool], list[dict]]] = {
    "size": _size_task,
    "correctness": _correctness_task,
    "girth": _girth_task,
    "fragility": _fragility_task,
}


def _workers(jobs: int) -> int:
    if os.environ.get(SERIAL_ENV, "") not in ("", "0"):
        return 1
    return max(1, jobs)


def run_suite(name: str, sizes, seeds: int, jobs: int = 1, verify: bool = True) -> list[dict]:
    """Run ``name`` for every size and seed ``0..seeds-1``; rows come back in task order."""
    try:
        task = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}") from None
    args = [(n, seed, verify) for n in sizes for seed in range(seeds)]
    workers = _workers(jobs)
    if workers == 1:
        chunks = [task(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(task, *zip(*args)))
    return [row for chunk in chunks for row in chunk]


def summarize(name: str, rows: list[dict]) -> dict:
    if not rows:
        return {}
    if name == "size":
        return {
            "max_resilient_per_n15": max(r["resilient_per_n15"] for r in rows),
            "max_union_ratio": max(r["union_ratio"] for r in rows),
            "all_contain_base": all(r["contains_base"] for r in rows),
            "all_new_le_2n": all(r["new_le_2n"] for r in rows),
            "all_verified": all(r.get("resilient_ok", True) and r.get("spanner_ok", True) for r in rows),
        }
    if name == "correctness":
        return {
            "runs": len(rows),
            "violating_runs": sum(not (r["resilient_ok"] and r["spanner_ok"]) for r in rows),
            "all_new_le_2n": all(r["new_le_2n"] for r in rows),
            "max_union_ratio": max(r["union_ratio"] for r in rows),
        }
    if name == "girth":
        return {"checks": len(rows), "failures": sum(not r["girth_ok"] for r in rows)}
    if name == "fragility":
        return {"graphs": len(rows)}
    return {}


def fit_power(xs, ys) -> tuple[float, float]:
    """Least-squares fit of ``y = c * x**p`` in log space; returns ``(c, p)``."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    k = len(lx)
    mx, my = sum(lx) / k, sum(ly) / k
    sxx = sum((a - mx) ** 2 for a in lx)
    if sxx == 0:
        return math.exp(my), 0.0
    p = sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sxx
    return math.exp(my - p * mx), p
