"""Deterministic graph families used by tests and experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .fragility import edge_fragility
from .graph import Edge, Graph, GraphError, norm_edge
from .spanners import Spanner, verify_fault_tolerance

MAX_INTERSECTION_K = 4


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs at least 1 vertex, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs at least 1 vertex, got {n}")
    return Graph(n, combinations(range(n), 2))


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise GraphError(f"grid dimensions must be positive, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    if leaves < 0:
        raise GraphError(f"star needs a non-negative leaf count, got {leaves}")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


BASIC_FAMILIES = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "grid": grid,
    "star": star,
}


def gen_basic(family: str, *params: int) -> Graph:
    try:
        make = BASIC_FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; expected one of {sorted(BASIC_FAMILIES)}") from None
    try:
        return make(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {params}") from exc


def _extra_edges(rng: random.Random, n: int, present: set, count: int) -> list[Edge]:
    max_m = n * (n - 1) // 2
    if count <= 0:
        return []
    if len(present) + count > max_m // 2:
        pool = [e for e in combinations(range(n), 2) if e not in present]
        return rng.sample(pool, count)
    chosen: list[Edge] = []
    taken = set(present)
    while len(chosen) < count:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        e = norm_edge(u, v)
        if e not in taken:
            taken.add(e)
            chosen.append(e)
    return chosen


def gen_random(
    n: int,
    m: int,
    seed: int,
    two_edge_connected: bool = False,
    weights: Optional[tuple[int, int]] = None,
) -> Graph:
    """Connected random simple graph: a random spanning tree plus random extra edges.

    With ``two_edge_connected`` the backbone is a random Hamiltonian cycle
    instead of a tree, so the result has no bridges.  ``weights=(lo, hi)``
    draws integer weights uniformly from ``[lo, hi]``.
    """
    max_m = n * (n - 1) // 2
    if n < 1:
        raise GraphError(f"need at least one vertex, got n={n}")
    if two_edge_connected:
        if n < 3 or not n <= m <= max_m:
            raise GraphError(f"infeasible 2-edge-connected graph with n={n}, m={m}")
    elif not n - 1 <= m <= max_m:
        raise GraphError(f"infeasible edge count m={m} for a connected graph on n={n} vertices")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    if two_edge_connected:
        backbone = [norm_edge(order[i], order[(i + 1) % n]) for i in range(n)]
    else:
        backbone = [norm_edge(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    present = set(backbone)
    edges = sorted(present | set(_extra_edges(rng, n, present, m - len(present))))
    if weights is not None:
        lo, hi = weights
        return Graph(n, [(u, v, rng.randint(lo, hi)) for (u, v) in edges])
    return Graph(n, edges)


def gen_intersection_complement(k: int) -> Graph:
    """Vertices are the ``k``-subsets of ``{0..3k-1}`` (lexicographic); disjoint subsets are adjacent."""
    if k < 1:
        raise GraphError(f"k must be at least 1, got {k}")
    if k > MAX_INTERSECTION_K:
        raise GraphError(f"k={k} exceeds the supported maximum {MAX_INTERSECTION_K}")
    subsets = [frozenset(c) for c in combinations(range(3 * k), k)]
    edges = [(i, j) for i, j in combinations(range(len(subsets)), 2) if not subsets[i] & subsets[j]]
    return Graph(len(subsets), edges)


def intersection_complement_counts(k: int) -> tuple[int, int, int]:
    """``(n, degree, m)`` predicted by the binomial formulas."""
    n = comb(3 * k, k)
    d = comb(2 * k, k)
    return n, d, n * d // 2


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    found = []
    for (u, v) in g.edges:
        nu = {y for y, _ in g.neighbors(u)}
        for w, _ in g.neighbors(v):
            if w > v and w in nu:
                found.append((u, v, w))
    return found


def triangle_deleted_spanner(g: Graph) -> Spanner:
    """Drop the lexicographically largest edge of every triangle.

    Requires every edge to lie on exactly one triangle, which is the case for
    the intersection-complement family; the result is a 2-spanner.
    """
    per_edge: dict[Edge, int] = dict.fromkeys(g.edges, 0)
    tris = triangles(g)
    for (a, b, c) in tris:
        for e in ((a, b), (a, c), (b, c)):
            per_edge[e] += 1
    off = [e for e, k in per_edge.items() if k != 1]
    if off:
        raise GraphError(f"edge {off[0]} lies on {per_edge[off[0]]} triangles, expected exactly one", off[0])
    drop = {max((a, b), (a, c), (b, c)) for (a, b, c) in tris}
    return Spanner(g, g.without_edges(drop), alpha=2, beta=0, kind="triangle-deleted")


@dataclass(frozen=True)
class Gadget:
    """Host graph, 1-fault-tolerant ``t``-spanner, and the edge whose fragility blows up."""

    graph: Graph
    spanner: Spanner
    edge: Edge
    t: int
    frag_host: int
    frag_spanner: int

    def __iter__(self):
        return iter((self.graph, self.spanner))


def gen_fragility_gap_gadget(t: int) -> Gadget:
    """Fault-tolerant spanner with an edge of fragility ``t`` in the host and ``t^2/2`` in the spanner.

    Vertices ``0..t`` form a path of host-only edges; edge ``(0, t)`` is in
    the spanner.  Each path edge is bypassed in the spanner by two internally
    disjoint detours of length ``t/2``, so a single failure leaves every path
    edge stretched by at most ``t/2``.  The output is verified before return.
    """
    if t < 4 or t % 2:
        raise GraphError(f"gadget needs an even stretch t >= 4, got {t}")
    half = t // 2
    host: list[Edge] = [(i - 1, i) for i in range(1, t + 1)]
    kept: list[Edge] = [(0, t)]
    nxt = t + 1
    for i in range(1, t + 1):
        for _ in range(2):
            inner = list(range(nxt, nxt + half - 1))
            nxt += half - 1
            walk = [i - 1] + inner + [i]
            kept.extend(norm_edge(walk[j], walk[j + 1]) for j in range(half))
    g = Graph(nxt, host + kept)
    s = Spanner(g, g.subgraph(kept), alpha=t, beta=0, kind=f"gadget:{t}")
    e = (0, t)
    fg, fs = edge_fragility(g, e), edge_fragility(s.graph, e)
    if not verify_fault_tolerance(g, s, t, 1):
        raise RuntimeError(f"gadget for t={t} is not a 1-fault-tolerant {t}-spanner")
    if fg != t or fs < t * t // 2:
        raise RuntimeError(f"gadget for t={t} has fragilities {fg} (host), {fs} (spanner)")
    return Gadget(g, s, e, t, fg, fs)


@dataclass(frozen=True)
class GeneratorSpec:
    """Serializable description of a generated graph."""

    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> Graph:
        p = self.params
        if self.family in BASIC_FAMILIES:
            return gen_basic(self.family, *p.get("args", ()))
        if self.family == "random":
            w = p.get("weights")
            return gen_random(p["n"], p["m"], p["seed"], p.get("two_edge_connected", False),
                              tuple(w) if w else None)
        if self.family == "intersection":
            return gen_intersection_complement(p["k"])
        if self.family == "gadget":
            return gen_fragility_gap_gadget(p["t"]).graph
        raise GraphError(f"unknown family {self.family!r}")

    def to_dict(self) -> dict:
        return {"family": self.family, "params": dict(self.params)}


__all__ = [
    "BASIC_FAMILIES",
    "Gadget",
    "GeneratorSpec",
    "complete",
    "cycle",
    "gen_basic",
    "gen_fragility_gap_gadget",
    "gen_intersection_complement",
    "gen_random",
    "grid",
    "intersection_complement_counts",
    "path",
    "star",
    "triangle_deleted_spanner",
    "triangles",
]
