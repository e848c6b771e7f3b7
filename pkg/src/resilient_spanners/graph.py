"""Immutable undirected graphs and the shortest-path primitives built on them.

Weights are kept exact: integers stay integers and non-integer weights are
stored as :class:`fractions.Fraction`, so fragility ratios compare against
integer thresholds without rounding.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

Number = Union[int, Fraction]
Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input; ``item`` names the offending piece."""

    def __init__(self, message: str, item=None):
        super().__init__(message)
        self.item = item


@total_ordering
class _Infinity:
    """Unreachable distance / infinite fragility.

    Compares greater than every finite number and absorbs arithmetic, so it
    survives ``max``/``min`` and ratio computations untouched.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("resilient_spanners.INF")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("INF * 0 is undefined")
        return self

    __rmul__ = __mul__

    def __truediv__(self, other):
        if other is self:
            raise ArithmeticError("INF / INF is undefined")
        return self


INF = _Infinity()
Distance = Union[int, Fraction, _Infinity]


def is_finite(x) -> bool:
    return x is not INF


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _exact_weight(w) -> Number:
    if isinstance(w, bool):
        raise GraphError(f"weight {w!r} is not a number", w)
    if isinstance(w, int):
        return w
    if isinstance(w, Rational):
        w = Fraction(w)
    elif isinstance(w, (float, str)):
        try:
            # floats go through their shortest decimal form, so 0.1 means 1/10
            w = Fraction(repr(w) if isinstance(w, float) else w)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise GraphError(f"weight {w!r} is not a finite number", w) from exc
    else:
        raise GraphError(f"weight {w!r} is not a number", w)
    return int(w) if w.denominator == 1 else w


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]
    weight: Number

    @property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(norm_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1))

    def __len__(self) -> int:
        return max(len(self.vertices) - 1, 0)


class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with positive weights.

    Instances are immutable; every derived graph is a new object.  Edges are
    stored as ``(min, max)`` pairs in sorted order and adjacency lists are
    sorted by neighbour id, which keeps every traversal deterministic.
    """

    __slots__ = ("_n", "_edges", "_weights", "_adj", "_unit", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence] = ()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {n!r}", n)
        weights: dict[Edge, Number] = {}
        for item in edges:
            if len(item) == 2:
                u, v = item
                w = 1
            elif len(item) == 3:
                u, v, w = item
            else:
                raise GraphError(f"edge {item!r} must be (u, v) or (u, v, w)", item)
            for x in (u, v):
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise GraphError(f"vertex {x!r} of edge {item!r} out of range [0, {n})", item)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}", item)
            w = _exact_weight(w)
            if w <= 0:
                raise GraphError(f"non-positive weight {w} on edge ({u}, {v})", item)
            key = norm_edge(u, v)
            if key in weights:
                raise GraphError(f"duplicate edge {key}", item)
            weights[key] = w
        self._n = n
        self._edges = tuple(sorted(weights))
        self._weights = weights
        adj: list[list[tuple[int, Number]]] = [[] for _ in range(n)]
        for (u, v) in self._edges:
            w = weights[(u, v)]
            adj[u].append((v, w))
            adj[v].append((u, w))
        for lst in adj:
            lst.sort()
        self._adj = tuple(tuple(lst) for lst in adj)
        self._unit = all(w == 1 for w in weights.values())
        self._index = None

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def is_unit(self) -> bool:
        return self._unit

    def weighted_edges(self) -> list[tuple[int, int, Number]]:
        return [(u, v, self._weights[(u, v)]) for (u, v) in self._edges]

    def weight(self, u: int, v: int) -> Number:
        try:
            return self._weights[norm_edge(u, v)]
        except KeyError:
            raise GraphError(f"edge ({u}, {v}) not in graph", (u, v)) from None

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self._weights

    def neighbors(self, v: int) -> tuple[tuple[int, Number], ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self._edges)

    def edge_index(self, e: Edge) -> int:
        if self._index is None:
            self._index = {edge: i for i, edge in enumerate(self._edges)}
        return self._index[norm_edge(*e)]

    def require_edge(self, e: Sequence[int]) -> Edge:
        u, v = e
        key = norm_edge(u, v)
        if key not in self._weights:
            raise GraphError(f"edge {key} not in graph", key)
        return key

    # -- derived graphs --------------------------------------------------

    def subgraph(self, edges: Iterable[Sequence[int]]) -> "Graph":
        """Spanning subgraph keeping the given edges (with host weights)."""
        keep = {self.require_edge(e) for e in edges}
        return Graph(self._n, [(u, v, self._weights[(u, v)]) for (u, v) in sorted(keep)])

    def without_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        drop = {self.require_edge(e) for e in edges}
        return Graph(self._n, [(u, v, w) for (u, v, w) in self.weighted_edges() if (u, v) not in drop])

    def unweighted(self) -> "Graph":
        if self._unit:
            return self
        return Graph(self._n, self._edges)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self._n == other.n and all(
            other.has_edge(u, v) and other.weight(u, v) == w for (u, v, w) in self.weighted_edges()
        )

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self._n == other._n
            and self._edges == other._edges
            and self._weights == other._weights
        )

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        kind = "unit" if self._unit else "weighted"
        return f"Graph(n={self._n}, m={self.m}, {kind})"


def build_graph(n: int, edges: Iterable[Sequence]) -> Graph:
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Searches
# ---------------------------------------------------------------------------


def _search(
    g: Graph,
    src: int,
    skip: Optional[Edge] = None,
    target: Optional[int] = None,
    cutoff=None,
) -> tuple[list, list]:
    """Shortest paths from ``src`` ignoring edge ``skip``.

    Returns ``(dist, pred)`` with ``None`` marking unreached vertices.  Ties
    take the smallest predecessor id.  Stops once ``target`` is settled or
    distances exceed ``cutoff``; entries beyond that point are not final.
    """
    n = g.n
    dist: list = [None] * n
    pred: list = [None] * n
    dist[src] = 0
    a, b = skip if skip is not None else (-1, -1)
    if g.is_unit:
        queue = deque([src])
        while queue:
            x = queue.popleft()
            if x == target:
                break
            dx = dist[x]
            if cutoff is not None and dx >= cutoff:
                break
            nd = dx + 1
            for y, _ in g.neighbors(x):
                if (x == a and y == b) or (x == b and y == a):
                    continue
                dy = dist[y]
                if dy is None:
                    dist[y] = nd
                    pred[y] = x
                    queue.append(y)
                elif dy == nd and x < pred[y]:
                    pred[y] = x
        return dist, pred

    done = [False] * n
    heap = [(0, src)]
    while heap:
        dx, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        if x == target:
            break
        if cutoff is not None and dx > cutoff:
            break
        for y, w in g.neighbors(x):
            if done[y] or (x == a and y == b) or (x == b and y == a):
                continue
            nd = dx + w
            dy = dist[y]
            if dy is None or nd < dy:
                dist[y] = nd
                pred[y] = x
                heapq.heappush(heap, (nd, y))
            elif nd == dy and x < pred[y]:
                pred[y] = x
    return dist, pred


def _walk_back(pred: list, src: int, dst: int) -> list[int]:
    path = [dst]
    while path[-1] != src:
        path.append(pred[path[-1]])
    path.reverse()
    return path


def sssp(g: Graph, src: int) -> list[Distance]:
    """Exact single-source distances; unreachable vertices map to ``INF``."""
    if not 0 <= src < g.n:
        raise GraphError(f"source {src} out of range [0, {g.n})", src)
    dist, _ = _search(g, src)
    return [INF if d is None else d for d in dist]


def distance(g: Graph, x: int, y: int) -> Distance:
    dist, _ = _search(g, x, target=y)
    d = dist[y]
    return INF if d is None else d


def distance_avoiding_edge(g: Graph, x: int, y: int, e: Sequence[int]) -> tuple[Distance, Optional[Path]]:
    """Shortest ``x``-``y`` distance in ``g`` minus edge ``e``, with a witness path."""
    skip = g.require_edge(e)
    dist, pred = _search(g, x, skip=skip, target=y)
    d = dist[y]
    if d is None:
        return INF, None
    return d, Path(tuple(_walk_back(pred, x, y)), d)


def all_pairs(g: Graph) -> list[list[Distance]]:
    return [sssp(g, s) for s in range(g.n)]


def girth(g: Graph) -> Distance:
    """Weight of a shortest cycle (edge count for unit weights); ``INF`` for forests.

    One search per root; every non-tree edge ``(x, y)`` closes a cycle of
    weight at most ``d(x) + w + d(y)``, and the bound is tight for a root on
    a minimum cycle.
    """
    best: Distance = INF
    for r in range(g.n):
        dist, pred = _search(g, r)
        for (x, y, w) in g.weighted_edges():
            dx, dy = dist[x], dist[y]
            if dx is None or dy is None or pred[y] == x or pred[x] == y:
                continue
            c = dx + dy + w
            if c < best:
                best = c
    return best


def bridges(g: Graph) -> set[Edge]:
    """Edges on no cycle (iterative low-link DFS)."""
    n = g.n
    order = [-1] * n
    low = [0] * n
    found: set[Edge] = set()
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        # (vertex, parent, neighbour iterator)
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for y, _ in it:
                if y == parent:
                    continue
                if order[y] == -1:
                    order[y] = low[y] = counter
                    counter += 1
                    stack.append((y, v, iter(g.neighbors(y))))
                    advanced = True
                    break
                low[v] = min(low[v], order[y])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] > order[parent]:
                    found.add(norm_edge(parent, v))
    return found


def connected_components(g: Graph, ignore: Iterable[Edge] = ()) -> list[list[int]]:
    skip = set(ignore)
    comp = [-1] * g.n
    out: list[list[int]] = []
    for s in range(g.n):
        if comp[s] != -1:
            continue
        comp[s] = len(out)
        members = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in g.neighbors(x):
                if comp[y] == -1 and norm_edge(x, y) not in skip:
                    comp[y] = len(out)
                    members.append(y)
                    queue.append(y)
        out.append(sorted(members))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def two_edge_connected_components(g: Graph) -> list[list[int]]:
    """Vertex classes joined by two edge-disjoint paths, sorted by smallest member."""
    return connected_components(g, ignore=bridges(g))


def replacement_path(
    g: Graph, e: Sequence[int], used: Optional[frozenset] = None
) -> Optional[Path]:
    """Shortest path between the endpoints of ``e`` avoiding ``e``.

    With ``used`` given, ties on weight go to the path with the fewest edges
    outside ``used``; remaining ties take the smallest predecessor id.
    """
    u, v = g.require_edge(e)
    if used is None:
        d, path = distance_avoiding_edge(g, u, v, (u, v))
        return path
    n = g.n
    best: list = [None] * n
    pred: list = [None] * n
    done = [False] * n
    best[u] = (0, 0)
    heap = [(0, 0, u)]
    while heap:
        dx, kx, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        if x == v:
            break
        for y, w in g.neighbors(x):
            if done[y] or (x == u and y == v):
                continue
            key = (dx + w, kx + (norm_edge(x, y) not in used))
            cur = best[y]
            if cur is None or key < cur:
                best[y] = key
                pred[y] = x
                heapq.heappush(heap, (key[0], key[1], y))
            elif key == cur and x < pred[y]:
                pred[y] = x
    if best[v] is None:
        return None
    return Path(tuple(_walk_back(pred, u, v)), best[v][0])


@dataclass(frozen=True)
class BackupCycle:
    """Edge ``edge`` closed into a short cycle by replacement ``path``.

    ``new_edges`` counts path edges outside the reuse set the cycle was
    selected against (all of them when no set was given).
    """

    edge: Edge
    path: Path
    new_edges: int

    @property
    def weight(self) -> Number:
        return self.path.weight

    @property
    def cycle_edges(self) -> tuple[Edge, ...]:
        return (self.edge,) + self.path.edges

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.path.vertices

    def length(self, g: Graph) -> Number:
        return g.weight(*self.edge) + self.path.weight


def short_cycle(g: Graph, e: Sequence[int], used: Optional[Iterable[Edge]] = None) -> Optional[BackupCycle]:
    """A minimum cycle through ``e``, or ``None`` when ``e`` is a bridge."""
    key = g.require_edge(e)
    used_set = None if used is None else frozenset(norm_edge(*x) for x in used)
    path = replacement_path(g, key, used_set)
    if path is None:
        return None
    if used_set is None:
        new = len(path)
    else:
        new = sum(1 for pe in path.edges if pe not in used_set)
    return BackupCycle(key, path, new)
