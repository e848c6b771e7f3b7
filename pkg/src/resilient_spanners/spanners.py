"""Classical spanner constructions and exhaustive distortion checks."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .fragility import edge_fragility
from .graph import (
    INF,
    Distance,
    Edge,
    Graph,
    GraphError,
    Number,
    _search,
    all_pairs,
    bridges,
    norm_edge,
)


@dataclass(frozen=True)
class Spanner:
    """Subgraph ``graph`` of ``host`` claimed to satisfy ``d_S <= alpha * d_G + beta``."""

    host: Graph
    graph: Graph
    alpha: Number = 1
    beta: Number = 0
    kind: str = "custom"

    def __post_init__(self):
        if not self.graph.is_subgraph_of(self.host):
            raise GraphError("spanner edges must be a subset of the host graph's edges")
        if self.alpha < 1 or self.beta < 0:
            raise GraphError(f"invalid distortion ({self.alpha}, {self.beta})")

    @property
    def stretch(self):
        """Multiplicative stretch implied by the distortion (``alpha + beta``)."""
        return self.alpha + self.beta

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    @property
    def size(self) -> int:
        return self.graph.m



def _greedy_edges(g: Graph, t, candidates: list[tuple]) -> list[tuple]:
    """Greedy t-spanner over ``candidates`` (already in processing order)."""
    kept: list[tuple] = []
    # growing adjacency of the partial spanner, searched with a cutoff
    adj: list[list] = [[] for _ in range(g.n)]
    partial = _Incremental(g.n, adj, g.is_unit)
    for (u, v, w) in candidates:
        if partial.distance_exceeds(u, v, t * w):
            kept.append((u, v, w))
            adj[u].append((v, w))
            adj[v].append((u, w))
    return kept


class _Incremental:
    """Bounded search over an adjacency list that grows during greedy construction."""

    def __init__(self, n, adj, unit):
        self.n = n
        self.adj = adj
        self.unit = unit

    def distance_exceeds(self, src, dst, bound) -> bool:
        if self.unit:
            seen = {src: 0}
            frontier = [src]
            d = 0
            while frontier and d < bound:
                d += 1
                nxt = []
                for x in frontier:
                    for y, _ in self.adj[x]:
                        if y not in seen:
                            if y == dst:
                                return d > bound
                            seen[y] = d
                            nxt.append(y)
                frontier = nxt
            return True
        best = {src: 0}
        heap = [(0, src)]
        while heap:
            dx, x = heapq.heappop(heap)
            if dx > bound:
                return True
            if x == dst:
                return False
            if dx > best.get(x, dx):
                continue
            for y, w in self.adj[x]:
                nd = dx + w
                if nd <= bound and nd < best.get(y, nd + 1):
                    best[y] = nd
                    heapq.heappush(heap, (nd, y))
        return True


def _greedy_order(g: Graph, skip: frozenset = frozenset()) -> list[tuple]:
    return sorted(((u, v, w) for (u, v, w) in g.weighted_edges() if (u, v) not in skip),
                  key=lambda item: (item[2], item[0], item[1]))


def greedy_spanner(g: Graph, t) -> Spanner:
    """Classic greedy multiplicative ``t``-spanner.

    Edges are scanned by nondecreasing weight (ties by endpoint pair); an edge
    is kept iff the current spanner distance between its endpoints exceeds
    ``t * w``.
    """
    if t < 3:
        raise GraphError(f"stretch must be at least 3, got {t}")
    kept = _greedy_edges(g, t, _greedy_order(g))
    return Spanner(g, Graph(g.n, kept), alpha=t, beta=0, kind=f"greedy:{t}")


def additive2_spanner(g: Graph) -> Spanner:
    """Additive 2-spanner by low-degree edges plus clustered BFS trees.

    Every edge touching a vertex of degree below ``ceil(sqrt(n))`` is kept.
    The remaining (heavy) vertices are dominated greedily by cluster centres;
    each heavy vertex keeps one edge to its centre and every centre
    contributes a full BFS tree.
    """
    if not g.is_unit:
        raise GraphError("additive spanners are defined for unit-weight graphs only")
    n = g.n
    s = math.isqrt(n - 1) + 1 if n > 0 else 0  # ceil(sqrt(n))
    heavy = [v for v in range(n) if g.degree(v) >= s]
    keep: set[Edge] = set()
    for (u, v) in g.edges:
        if g.degree(u) < s or g.degree(v) < s:
            keep.add((u, v))

    uncovered = set(heavy)
    centres: list[int] = []
    while uncovered:
        # candidate centre dominating the most uncovered heavy vertices
        best, best_cover = -1, ()
        for c in range(n):
            cover = tuple(y for y, _ in g.neighbors(c) if y in uncovered)
            if len(cover) > len(best_cover):
                best, best_cover = c, cover
        centres.append(best)
        for y in best_cover:
            keep.add(norm_edge(y, best))
        uncovered.difference_update(best_cover)

    for c in centres:
        _, pred = _search(g, c)
        for y in range(n):
            if pred[y] is not None:
                keep.add(norm_edge(y, pred[y]))
    return Spanner(g, g.subgraph(keep), alpha=1, beta=2, kind="additive2")


def fault_tolerant_spanner(g: Graph, t, f: int = 1) -> Spanner:
    """Union of ``f + 1`` greedy layers, each built on edges unused by earlier layers."""
    if t < 3:
        raise GraphError(f"stretch must be at least 3, got {t}")
    if f < 1:
        raise GraphError(f"failure budget must be at least 1, got {f}")
    taken: set[Edge] = set()
    kept: list[tuple] = []
    for _ in range(f + 1):
        layer = _greedy_edges(g, t, _greedy_order(g, frozenset(taken)))
        if not layer:
            break
        kept.extend(layer)
        taken.update((u, v) for (u, v, _) in layer)
    return Spanner(g, Graph(g.n, kept), alpha=t, beta=0, kind=f"ft:{t}:{f}")


def spanner_from_spec(g: Graph, spec: str) -> Spanner:
    """Build a base spanner from ``greedy:T``, ``additive2`` or ``ft:T[:F]``."""
    parts = spec.split(":")
    try:
        if parts[0] == "greedy" and len(parts) == 2:
            return greedy_spanner(g, int(parts[1]))
        if parts[0] == "additive2" and len(parts) == 1:
            return additive2_spanner(g)
        if parts[0] == "ft" and len(parts) in (2, 3):
            return fault_tolerant_spanner(g, int(parts[1]), int(parts[2]) if len(parts) == 3 else 1)
    except ValueError as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed spanner spec {spec!r}") from exc
    raise GraphError(f"unknown spanner spec {spec!r}; use greedy:T, additive2 or ft:T[:F]")


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass
class DistortionCheck:
    """Outcome of an exhaustive distortion check.

    ``pair`` is the worst pair found: a violating one if any exist, otherwise
    the pair of largest stretch.  ``failed`` is the failure set it was seen under.
    """

    ok: bool
    pair: Optional[tuple[int, int]] = None
    dist_s: Optional[Distance] = None
    dist_g: Optional[Distance] = None
    violations: int = 0
    failed: tuple[Edge, ...] = field(default_factory=tuple)
    key: tuple = field(default=(), repr=False, compare=False)

    def __bool__(self) -> bool:
        return self.ok


def _pair_key(violated: bool, ds, dg) -> tuple:
    if ds is INF:
        return (violated, 1, 0)
    return (violated, 0, Fraction(ds) / Fraction(dg))


def _compare(host_d, sub_d, alpha, beta, failed=()) -> DistortionCheck:
    n = len(host_d)
    worst = None
    worst_key = None
    bad = 0
    for x in range(n):
        for y in range(x + 1, n):
            dg = host_d[x][y]
            if dg is INF:
                continue
            ds = sub_d[x][y]
            violated = ds is INF or ds > alpha * dg + beta
            bad += violated
            key = _pair_key(violated, ds, dg)
            if worst_key is None or key > worst_key:
                worst_key, worst = key, (x, y, ds, dg)
    if worst is None:
        return DistortionCheck(True, failed=tuple(failed))
    x, y, ds, dg = worst
    return DistortionCheck(bad == 0, (x, y), ds, dg, bad, tuple(failed), worst_key)


def _subgraph_of(g: Graph, s) -> Graph:
    sub = s.graph if isinstance(s, Spanner) else s
    if not sub.is_subgraph_of(g):
        raise GraphError("candidate spanner is not a subgraph of the host graph")
    return sub


def verify_spanner(g: Graph, s, alpha, beta) -> DistortionCheck:
    """Exhaustive check of ``d_S(x, y) <= alpha * d_G(x, y) + beta`` over all pairs."""
    sub = _subgraph_of(g, s)
    return _compare(all_pairs(g), all_pairs(sub), alpha, beta)


def verify_fault_tolerance(g: Graph, s, t, f: int = 1, beta=0) -> DistortionCheck:
    """Exhaustive check that ``S - F`` stretches ``G - F`` by at most ``t`` for all ``|F| <= f``.

    Failure sets containing no spanner edge only lengthen host distances, so
    only subsets of the spanner's edges are enumerated.
    """
    sub = _subgraph_of(g, s)
    worst: Optional[DistortionCheck] = None
    total_bad = 0
    for size in range(f + 1):
        for failed in combinations(sub.edges, size):
            res = _compare(all_pairs(g.without_edges(failed)),
                           all_pairs(sub.without_edges(failed)), t, beta, failed)
            total_bad += res.violations
            if res.pair is not None and (worst is None or res.key > worst.key):
                worst = res
    if worst is None:
        return DistortionCheck(True)
    worst.ok = total_bad == 0
    worst.violations = total_bad
    return worst


@dataclass
class FragilityRatio:
    ratio: Distance
    edge: Optional[Edge]
    frag_s: Distance = None
    frag_g: Distance = None
    bound: Number = 0

    @property
    def ok(self) -> bool:
        return self.ratio <= self.bound

    def __bool__(self) -> bool:
        return self.ok


def fault_tolerant_fragility_bound(g: Graph, s, t) -> FragilityRatio:
    """Largest ``frag_S(e) / frag_G(e)`` over spanner edges (``INF / INF`` counts as 1)."""
    sub = _subgraph_of(g, s)
    best = FragilityRatio(1, None, bound=t)
    for e in sub.edges:
        fs, fg = edge_fragility(sub, e), edge_fragility(g, e)
        if fs is INF:
            r = 1 if fg is INF else INF
        else:
            r = Fraction(fs) / Fraction(fg)
            r = int(r) if r.denominator == 1 else r
        if best.edge is None or r > best.ratio:
            best = FragilityRatio(r, e, fs, fg, t)
    return best


def spanner_bridges_kept(g: Graph, s) -> bool:
    sub = _subgraph_of(g, s)
    return all(sub.has_edge(*b) for b in bridges(g))


__all__ = [
    "DistortionCheck",
    "FragilityRatio",
    "Spanner",
    "additive2_spanner",
    "fault_tolerant_fragility_bound",
    "fault_tolerant_spanner",
    "greedy_spanner",
    "spanner_bridges_kept",
    "spanner_from_spec",
    "verify_fault_tolerance",
    "verify_spanner",
]
