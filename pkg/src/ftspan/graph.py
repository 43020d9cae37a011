"""Immutable weighted undirected graphs and the exact distance primitives.

Every construction and every check in this package goes through the two
primitives here: exact weighted shortest-path distance under vertex
deletions, and hop-bounded unweighted distance.  Both are deliberately
simple (binary-heap Dijkstra, truncated BFS) because the verifier treats
them as ground truth.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass

Adjacency = tuple[tuple[tuple[int, float], ...], ...]


@dataclass(frozen=True)
class EdgeRecord:
    """One undirected edge; ``u < v`` and ``id`` is stable across subgraphs."""

    id: int
    u: int
    v: int
    weight: float


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with non-negative edge weights.

    Immutable after construction: safe to share across threads, and all
    distance queries are pure.  ``adjacency[v]`` lists ``(neighbor, weight)``
    pairs consistent with ``edges``.
    """

    n: int
    edges: tuple[EdgeRecord, ...]
    adjacency: Adjacency

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_weights(self) -> list[float]:
        return [e.weight for e in self.edges]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return any(x == v for x, _ in self.adjacency[u])


def _check_weight(w) -> float:
    w = float(w)
    if math.isnan(w) or math.isinf(w):
        raise ValueError(f"edge weight must be finite, got {w}")
    if w < 0:
        raise ValueError(f"edge weight must be non-negative, got {w}")
    return w


def _build_adjacency(n: int, edges) -> Adjacency:
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for e in edges:
        adj[e.u].append((e.v, e.weight))
        adj[e.v].append((e.u, e.weight))
    return tuple(tuple(sorted(a)) for a in adj)


def normalize(raw_edges, n: int) -> WeightedGraph:
    """Build a canonical WeightedGraph from ``(u, v, weight)`` triples.

    Self-loops are dropped, parallel edges collapse to the minimum weight,
    and edge ids are assigned in lexicographic ``(u, v)`` order so the same
    input always produces the same graph.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    best: dict[tuple[int, int], float] = {}
    for u, v, w in raw_edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge endpoint out of range: ({u}, {v}) with n={n}")
        w = _check_weight(w)
        if u == v:
            continue
        if u > v:
            u, v = v, u
        prev = best.get((u, v))
        if prev is None or w < prev:
            best[(u, v)] = w
    records = tuple(
        EdgeRecord(i, u, v, best[(u, v)]) for i, (u, v) in enumerate(sorted(best))
    )
    return WeightedGraph(n, records, _build_adjacency(n, records))


def from_records(n: int, records) -> WeightedGraph:
    """Assemble a graph from existing EdgeRecords, keeping their ids.

    Used for spanners and other subgraphs: ids stay stable so outputs can be
    traced back to input edges.
    """
    seen: set[tuple[int, int]] = set()
    out = []
    for e in records:
        if not (0 <= e.u < n and 0 <= e.v < n) or e.u == e.v:
            raise ValueError(f"bad edge record {e}")
        if e.u > e.v:
            raise ValueError(f"edge record endpoints must satisfy u < v: {e}")
        _check_weight(e.weight)
        if (e.u, e.v) in seen:
            raise ValueError(f"duplicate edge ({e.u}, {e.v})")
        seen.add((e.u, e.v))
        out.append(e)
    records = tuple(out)
    return WeightedGraph(n, records, _build_adjacency(n, records))


def sorted_edges(g: WeightedGraph) -> list[EdgeRecord]:
    """Edges in nondecreasing weight order, ties broken by (u, v, id).

    The tie rule makes the greedy processing order a deterministic total
    order, so every algorithm in this package is reproducible.
    """
    return sorted(g.edges, key=lambda e: (e.weight, e.u, e.v, e.id))


def weighted_distance(g: WeightedGraph, u: int, v: int, excluded=frozenset()) -> float:
    """Exact shortest-path weight from u to v after deleting ``excluded``.

    Deleting a vertex removes its incident edges.  Returns ``math.inf`` when
    u and v are disconnected; infinity is never approximated by a large
    finite value.
    """
    excluded = frozenset(excluded)
    if u in excluded or v in excluded:
        raise ValueError("query endpoints may not be excluded")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("query endpoint out of range")
    if u == v:
        return 0.0
    dist = {u: 0.0}
    heap = [(0.0, u)]
    adj = g.adjacency
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist.get(x, math.inf):
            continue
        if x == v:
            return d
        for y, w in adj[x]:
            if y in excluded:
                continue
            nd = d + w
            if nd < dist.get(y, math.inf):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return math.inf


def distance_exceeds(adjacency, u: int, v: int, bound: float, excluded=frozenset()) -> bool:
    """True iff the u-v shortest-path weight is strictly greater than ``bound``.

    Works on a plain adjacency-list structure (``adjacency[x]`` iterates
    ``(neighbor, weight)``) so the greedy loops can query their in-progress
    spanner without rebuilding a WeightedGraph.  Exact: the search settles
    every vertex with distance <= bound before giving up.
    """
    if u == v:
        return 0.0 > bound
    dist = {u: 0.0}
    heap = [(0.0, u)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist.get(x, math.inf):
            continue
        if d > bound:
            return True
        if x == v:
            return False
        for y, w in adjacency[x]:
            if y in excluded:
                continue
            nd = d + w
            if nd <= bound and nd < dist.get(y, math.inf):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return True


def hop_distance_at_most(g: WeightedGraph, u: int, v: int, limit: int) -> bool:
    """True iff u and v are within ``limit`` hops, ignoring weights.

    Breadth-first search truncated at depth ``limit``.
    """
    if limit < 0:
        raise ValueError("hop limit must be >= 0")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("query endpoint out of range")
    if u == v:
        return True
    seen = {u}
    frontier = deque([u])
    adj = g.adjacency
    for _ in range(limit):
        if not frontier:
            break
        next_frontier: deque[int] = deque()
        while frontier:
            x = frontier.popleft()
            for y, _ in adj[x]:
                if y == v:
                    return True
                if y not in seen:
                    seen.add(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return False
