"""Turning a spanner into a sigma-resilient one with reuse-aware backup cycles.

For every spanner edge whose fragility inside the spanner exceeds ``sigma``,
a shortest replacement path from the host graph is added.  Among equally
short replacement paths the one introducing the fewest edges not already
selected is taken, which keeps the union of backup cycles small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .fragility import FragilityMap, all_fragilities, edge_fragility
from .graph import INF, BackupCycle, Distance, Edge, Graph, GraphError, bridges, norm_edge, short_cycle
from .spanners import Spanner


def backup_cycle(g: Graph, e: Sequence[int], used: Iterable[Edge] = ()) -> Optional[BackupCycle]:
    """Short cycle for ``e`` preferring edges in ``used``.

    Candidates are ranked by path weight, then by number of edges outside
    ``used``, then by smallest predecessor ids.  ``None`` iff ``e`` is a bridge.
    """
    return short_cycle(g, e, used=used)


@dataclass(frozen=True)
class ResilientSpanner:
    base: Spanner
    graph: Graph
    added: tuple[Edge, ...]
    sigma: int
    cycles: tuple[BackupCycle, ...] = ()
    base_fragility: FragilityMap = field(default_factory=dict, repr=False, compare=False)

    @property
    def host(self) -> Graph:
        return self.base.host

    @property
    def spanner(self) -> Spanner:
        return Spanner(self.host, self.graph, self.base.alpha, self.base.beta,
                       kind=f"resilient[{self.base.kind};sigma={self.sigma}]")

    @property
    def size(self) -> int:
        return self.graph.m


def _check_sigma(sigma) -> None:
    if not isinstance(sigma, int) or isinstance(sigma, bool) or sigma < 2:
        raise GraphError(f"sigma must be an integer >= 2, got {sigma!r}")


def backup_targets(s: Spanner, sigma: int, frag_s: FragilityMap, host_bridges: set) -> list[Edge]:
    """Spanner edges needing a backup path, highest fragility first (ties by edge)."""
    targets = sorted(e for e in s.edges if frag_s[e] > sigma and e not in host_bridges)
    targets.sort(key=lambda e: frag_s[e], reverse=True)
    return targets


def make_resilient(g: Graph, s: Spanner, sigma: int, reuse: bool = True) -> ResilientSpanner:
    """Add backup cycles to ``s`` so that ``frag_R(e) <= max(sigma, frag_G(e))`` for all edges.

    The reuse set starts as the spanner's own edges and grows with each
    selected cycle.  ``reuse=False`` selects plain lexicographic short cycles,
    which is useful as a baseline.  Bridges of ``g`` need no backup.
    """
    _check_sigma(sigma)
    if s.host is not g and s.host != g:
        raise GraphError("spanner was built for a different host graph")
    if sigma < s.alpha + s.beta:
        raise GraphError(
            f"sigma={sigma} is below the base distortion alpha+beta={s.alpha + s.beta}; "
            "start from a sigma-spanner instead"
        )
    frag_s = all_fragilities(s.graph)
    kept = set(s.edges)
    used = set(kept)
    cycles = []
    for e in backup_targets(s, sigma, frag_s, bridges(g)):
        cyc = short_cycle(g, e, used=used if reuse else None)
        cycles.append(cyc)
        for pe in cyc.path.edges:
            kept.add(pe)
            used.add(pe)
    added = tuple(sorted(kept.difference(s.edges)))
    return ResilientSpanner(s, g.subgraph(kept), added, sigma, tuple(cycles), frag_s)


# ---------------------------------------------------------------------------
# Verification and accounting
# ---------------------------------------------------------------------------


@dataclass
class Violation:
    edge: Edge
    frag_sub: Distance
    frag_host: Distance


@dataclass
class ResilienceCheck:
    ok: bool
    violations: list[Violation]
    checked: int

    def __bool__(self) -> bool:
        return self.ok


def verify_resilient(g: Graph, r, sigma: int) -> ResilienceCheck:
    """Check ``frag_R(e) <= max(sigma, frag_G(e))`` for every edge of ``r``.

    A bridge of ``g`` kept in ``r`` has infinite fragility on both sides and
    passes by definition.
    """
    sub = r.graph if isinstance(r, (Spanner, ResilientSpanner)) else r
    if not sub.is_subgraph_of(g):
        raise GraphError("candidate is not a subgraph of the host graph")
    bad = []
    for e in sub.edges:
        fr = edge_fragility(sub, e)
        if fr <= sigma:
            continue
        fg = edge_fragility(g, e)
        if fr is INF and fg is INF:
            continue
        if fr > max(sigma, fg):
            bad.append(Violation(e, fr, fg))
    return ResilienceCheck(not bad, bad, sub.m)


@dataclass
class FragilityPartition:
    """Edges needing a backup, split by their fragility in the host graph.

    ``high`` takes precedence when the ``log2 n`` threshold drops below 6.
    ``below`` holds edges whose host fragility is already under ``sigma``.
    """

    low: list[Edge]
    mid: list[Edge]
    high: list[Edge]
    below: list[Edge]
    log_n: float

    def sizes(self) -> dict[str, int]:
        return {"low": len(self.low), "mid": len(self.mid), "high": len(self.high), "below": len(self.below)}


def fragility_classes(
    g: Graph,
    s: Spanner,
    sigma: int,
    fm: Optional[FragilityMap] = None,
    frag_s: Optional[FragilityMap] = None,
) -> FragilityPartition:
    if frag_s is None:
        frag_s = all_fragilities(s.graph)
    log_n = math.log2(g.n) if g.n > 1 else 0.0
    low, mid, high, below = [], [], [], []
    for e in backup_targets(s, sigma, frag_s, bridges(g)):
        f = fm[e] if fm is not None else edge_fragility(g, e)
        if f < sigma:
            below.append(e)
        elif f >= log_n:
            high.append(e)
        elif f <= 5:
            low.append(e)
        else:
            mid.append(e)
    return FragilityPartition(sorted(low), sorted(mid), sorted(high), sorted(below), log_n)


@dataclass
class CycleUnionStats:
    """Old/new/cross accounting over cycles in selection order.

    ``old`` sums per-cycle repeats; ``new`` and ``cross`` count distinct
    union edges by the class of their first appearance, so together they
    equal ``union``.
    """

    old: int
    new: int
    cross: int
    union: int
    vertices: int
    per_cycle: list[tuple[int, int, int]]

    @property
    def q(self) -> int:
        return len(self.per_cycle)

    def size_bound(self, n: int) -> float:
        """``min(q sqrt(n) + n, n sqrt(q) + q)``."""
        q = self.q
        return min(q * math.sqrt(n) + n, n * math.sqrt(q) + q)

    def as_dict(self) -> dict:
        return {"old": self.old, "new": self.new, "cross": self.cross,
                "union": self.union, "vertices": self.vertices, "cycles": self.q}


def cycle_union_stats(cycles: Sequence) -> CycleUnionStats:
    """Classify each cycle's edges against all earlier cycles.

    An edge is old if an earlier cycle contained it, new if one of its
    endpoints lies on no earlier cycle, and cross otherwise.  ``cycles`` may
    hold :class:`BackupCycle` objects or plain edge lists.
    """
    seen_edges: set[Edge] = set()
    seen_vertices: set[int] = set()
    old_total = new_total = cross_total = 0
    per = []
    for cyc in cycles:
        edges = cyc.cycle_edges if isinstance(cyc, BackupCycle) else [norm_edge(*e) for e in cyc]
        edges = list(dict.fromkeys(edges))
        o = nw = cr = 0
        for (x, y) in edges:
            if (x, y) in seen_edges:
                o += 1
            elif x not in seen_vertices or y not in seen_vertices:
                nw += 1
            else:
                cr += 1
        per.append((o, nw, cr))
        old_total += o
        new_total += nw
        cross_total += cr
        seen_edges.update(edges)
        for (x, y) in edges:
            seen_vertices.add(x)
            seen_vertices.add(y)
    return CycleUnionStats(old_total, new_total, cross_total, len(seen_edges), len(seen_vertices), per)


__all__ = [
    "CycleUnionStats",
    "FragilityPartition",
    "ResilienceCheck",
    "ResilientSpanner",
    "Violation",
    "backup_cycle",
    "backup_targets",
    "cycle_union_stats",
    "fragility_classes",
    "make_resilient",
    "verify_resilient",
]
