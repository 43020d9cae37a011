"""Incremental hop-bounded reachability over one sampled subgraph.

Conceptually this is the layered DAG of a subgraph: 2k copies of the
vertex set, chain edges (u, j) -> (u, j+1) present from construction, and
each inserted subgraph edge contributing a rung between consecutive
layers in both directions.  A pair (u, v) is *reachable* exactly when a
path runs from u's copy in the first layer to v's copy in the last one,
which happens exactly when their current hop distance is at most 2k-1.

Two incremental index implementations sit behind the same interface (the
compiled capped-distance kernel and the pure layered bit-vector one), plus
a recompute-on-query backend used as a differential-testing baseline.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import kernels


class IncrementalReachability:
    """Single-writer incremental structure over one subgraph's vertices.

    Queries are index lookups, never graph traversals; insertions pay the
    update cost.  Vertices are global ids; anything outside the base vertex
    set is rejected.
    """

    def __init__(self, vertices, k: int, backend: str | None = None, _loc=None):
        if k < 1:
            raise ValueError("stretch parameter k must be >= 1")
        if isinstance(vertices, np.ndarray):
            base = np.unique(vertices.astype(np.int64, copy=False))
        else:
            base = np.unique(np.fromiter(vertices, dtype=np.int64))
        if len(base) and base[0] < 0:
            raise ValueError("vertex ids must be non-negative")
        self.k = k
        self.max_hops = 2 * k - 1
        self._base = base
        if _loc is not None:
            self.loc = _loc
        else:
            size = int(base[-1]) + 1 if len(base) else 0
            self.loc = np.full(size, -1, dtype=np.int16)
            self.loc[base] = np.arange(len(base), dtype=np.int16)
        impl = kernels.load_backend(backend)
        self.mat = impl.HopMatrix(len(base), self.max_hops)
        self.backend = impl.BACKEND

    @property
    def base_vertices(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._base)

    @property
    def layered_node_count(self) -> int:
        return len(self._base) * 2 * self.k

    def _local(self, u: int) -> int:
        if not 0 <= u < len(self.loc):
            raise ValueError(f"vertex {u} not in the base vertex set")
        lu = int(self.loc[u])
        if lu < 0:
            raise ValueError(f"vertex {u} not in the base vertex set")
        return lu

    def insert_spanner_edge(self, u: int, v: int) -> None:
        """Insert subgraph edge (u, v): one rung per layer, both directions."""
        if u == v:
            raise ValueError("self-loops cannot be inserted")
        self.mat.insert(self._local(u), self._local(v))

    def reachable(self, u: int, v: int) -> bool:
        """Constant-time lookup: is the current hop distance <= 2k-1?"""
        return self.mat.within(self._local(u), self._local(v))

    def hop_distance(self, u: int, v: int) -> int:
        """Capped hop distance (2k means 'farther than 2k-1')."""
        return self.mat.distance(self._local(u), self._local(v))


class RecomputeReachability:
    """Same interface, no index: every query runs a truncated BFS over the
    stored subgraph edges.  Exists for differential testing only."""

    def __init__(self, vertices, k: int):
        if k < 1:
            raise ValueError("stretch parameter k must be >= 1")
        self.k = k
        self.max_hops = 2 * k - 1
        self.base_vertices = tuple(sorted({int(v) for v in vertices}))
        self._members = set(self.base_vertices)
        self._adj: dict[int, set[int]] = {v: set() for v in self.base_vertices}

    @property
    def layered_node_count(self) -> int:
        return len(self.base_vertices) * 2 * self.k

    def _check(self, u: int) -> None:
        if u not in self._members:
            raise ValueError(f"vertex {u} not in the base vertex set")

    def insert_spanner_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("self-loops cannot be inserted")
        self._check(u)
        self._check(v)
        self._adj[u].add(v)
        self._adj[v].add(u)

    def reachable(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        if u == v:
            return True
        seen = {u}
        frontier = deque([u])
        for _ in range(self.max_hops):
            if not frontier:
                return False
            nxt: deque[int] = deque()
            while frontier:
                x = frontier.popleft()
                for y in self._adj[x]:
                    if y == v:
                        return True
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return False


def new_layered(vertices, k: int, backend: str | None = None):
    """Build a reachability structure over ``vertices`` with stretch 2k-1.

    ``backend`` picks the incremental index implementation ('compiled' or
    'pure'), or 'recompute' for the traversal-per-query baseline.
    """
    if backend == "recompute":
        return RecomputeReachability(vertices, k)
    return IncrementalReachability(vertices, k, backend=backend)
