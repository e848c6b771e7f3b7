"""Per-edge fragility: the worst relative distance increase caused by losing an edge.

The maximum over all vertex pairs is always attained at the endpoints of the
removed edge, so :func:`edge_fragility` needs a single replacement-path query.
:func:`fragility_oracle` evaluates the all-pairs definition literally and is
kept for cross-checking.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .graph import (
    INF,
    Distance,
    Edge,
    Graph,
    _search,
    all_pairs,
    girth,
)

FragilityMap = dict  # Edge -> int | Fraction | INF


def _ratio(num, den):
    if num is INF:
        return INF
    q = Fraction(num) / Fraction(den)
    return int(q) if q.denominator == 1 else q


def edge_fragility(g: Graph, e: Sequence[int]) -> Distance:
    """Fragility of ``e`` from its endpoints alone.

    The denominator is the endpoint distance in ``g``, which is ``w(e)``
    unless a lighter detour exists (in that case the fragility is 1).
    """
    u, v = g.require_edge(e)
    dist, _ = _search(g, u, skip=(u, v), target=v)
    detour = dist[v]
    if detour is None:
        return INF
    w = g.weight(u, v)
    return _ratio(detour, min(w, detour))


def fragility_oracle(g: Graph, e: Sequence[int], host_distances=None) -> Distance:
    """Literal maximum of ``d_{G-e}(x, y) / d_G(x, y)`` over all pairs ``x != y``.

    Pairs already disconnected in ``g`` are ignored.  ``host_distances`` may
    pass a precomputed all-pairs matrix of ``g`` when checking many edges.
    """
    key = g.require_edge(e)
    before = all_pairs(g) if host_distances is None else host_distances
    after = all_pairs(g.without_edges([key]))
    # track the best ratio as num/den and compare by cross-multiplication
    num, den = 1, 1
    for x in range(g.n):
        for y in range(g.n):
            if x == y or before[x][y] is INF:
                continue
            if after[x][y] is INF:
                return INF
            a, b = after[x][y], before[x][y]
            if a * den > num * b:
                num, den = a, b
    return _ratio(num, den)


def all_fragilities(g: Graph) -> FragilityMap:
    return {e: edge_fragility(g, e) for e in g.edges}


def high_fragility_subgraph(g: Graph, sigma: int, fm: FragilityMap) -> Graph:
    """Spanning subgraph of the edges whose fragility exceeds ``sigma``."""
    return g.subgraph(e for e in g.edges if fm[e] > sigma)


def check_girth_bound(g: Graph, sigma: int, fm: FragilityMap | None = None) -> bool:
    """True iff every cycle of the high-fragility subgraph has more than ``sigma + 1`` edges.

    Cycle length is counted in edges, also for weighted input.
    """
    if fm is None:
        fm = all_fragilities(g)
    hop_girth = girth(high_fragility_subgraph(g, sigma, fm).unweighted())
    return hop_girth > sigma + 1


def fragility_histogram(fm: FragilityMap) -> dict[str, int]:
    """Counts per distinct fragility value, keyed by its text form, sorted by value."""
    counts: dict = {}
    for value in fm.values():
        counts[value] = counts.get(value, 0) + 1
    return {str(k): counts[k] for k in sorted(counts)}


def max_fragility(fm: FragilityMap) -> Distance:
    return max(fm.values(), default=0)


__all__ = [
    "Edge",
    "FragilityMap",
    "all_fragilities",
    "check_girth_bound",
    "edge_fragility",
    "fragility_histogram",
    "fragility_oracle",
    "high_fragility_subgraph",
    "max_fragility",
]
