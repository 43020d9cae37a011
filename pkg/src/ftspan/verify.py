"""Ground-truth validation of fault-tolerant spanners.

The structural reduction behind both checkers: a subgraph H is an f-fault
(2k-1)-spanner of G iff for every fault set F (|F| <= f) and every *edge*
(u, v) of G with endpoints outside F, the distance in H minus F is at most
(2k-1) times the edge weight.  Checking edges only (not all vertex pairs)
is sufficient, which is what makes exhaustive desk-scale checking viable.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import WeightedGraph, distance_exceeds, weighted_distance

CHECK_DEFAULT_CAP_N = 16
CHECK_DEFAULT_CAP_F = 3


@dataclass
class Counterexample:
    edge_id: int
    u: int
    v: int
    weight: float
    fault_set: tuple[int, ...]
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {
            "edge_id": self.edge_id,
            "u": self.u,
            "v": self.v,
            "weight": self.weight,
            "fault_set": list(self.fault_set),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass
class Verdict:
    passed: bool
    counterexample: Counterexample | None
    checked: int
    mode: str

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "mode": self.mode,
            "checked": self.checked,
            "counterexample": None if self.counterexample is None else self.counterexample.to_dict(),
        }


def _require_subgraph(g: WeightedGraph, h: WeightedGraph) -> None:
    if h.n != g.n:
        raise ValueError("spanner must share the input's vertex set")
    g_edges = {(e.u, e.v): e.weight for e in g.edges}
    for e in h.edges:
        w = g_edges.get((e.u, e.v))
        if w is None or w != e.weight:
            raise ValueError(f"spanner edge ({e.u}, {e.v}, {e.weight}) is not an input edge")


def _colex_combinations(items, size):
    # colex: ordered by the largest differing element
    return sorted(combinations(items, size), key=lambda s: s[::-1])


def check_ft_spanner_exhaustive(
    g: WeightedGraph,
    h: WeightedGraph,
    f: int,
    k: int,
    cap_n: int = CHECK_DEFAULT_CAP_N,
    cap_f: int = CHECK_DEFAULT_CAP_F,
) -> Verdict:
    """Exhaustively verify that h is an f-fault (2k-1)-spanner of g.

    Iterates every edge of g and, per edge, every fault set avoiding its
    endpoints in (size, colex) order, stopping at the first violation; the
    reported counterexample is therefore reproducible.  Counterexamples are
    re-validated through the exact distance primitive before being
    returned.
    """
    if f < 0 or k < 1:
        raise ValueError("need f >= 0 and k >= 1")
    if g.n > cap_n or f > cap_f:
        raise ValueError(
            f"instance (n={g.n}, f={f}) exceeds the exhaustive cap (n<={cap_n}, f<={cap_f})"
        )
    _require_subgraph(g, h)
    stretch = 2 * k - 1
    vertices = list(range(g.n))
    checked = 0
    for e in g.edges:
        bound = stretch * e.weight
        others = [x for x in vertices if x != e.u and x != e.v]
        for size in range(0, min(f, len(others)) + 1):
            for F in _colex_combinations(others, size):
                checked += 1
                if distance_exceeds(h.adjacency, e.u, e.v, bound, excluded=frozenset(F)):
                    lhs = weighted_distance(h, e.u, e.v, excluded=frozenset(F))
                    if not lhs > bound:
                        raise AssertionError(
                            "checker found a violation the distance primitive rejects"
                        )
                    return Verdict(
                        False,
                        Counterexample(e.id, e.u, e.v, e.weight, F, lhs, bound),
                        checked,
                        "exhaustive",
                    )
    return Verdict(True, None, checked, "exhaustive")


def check_ft_spanner_sampled(
    g: WeightedGraph,
    h: WeightedGraph,
    f: int,
    k: int,
    trials: int,
    rng: np.random.Generator,
) -> Verdict:
    """Spot-check `trials` random (edge, fault set) pairs.

    Edges are drawn uniformly; fault sets are uniform among subsets of size
    min(f, n-2) avoiding the endpoints (larger fault sets dominate smaller
    ones, so sampling at full size loses nothing).  A pass here is
    explicitly weaker than the exhaustive verdict.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if f < 0 or k < 1:
        raise ValueError("need f >= 0 and k >= 1")
    _require_subgraph(g, h)
    if g.m == 0:
        return Verdict(True, None, 0, "sampled")
    stretch = 2 * k - 1
    fmax = min(f, g.n - 2)
    all_vertices = np.arange(g.n)
    checked = 0
    for _ in range(trials):
        e = g.edges[int(rng.integers(g.m))]
        others = all_vertices[(all_vertices != e.u) & (all_vertices != e.v)]
        F = tuple(int(x) for x in rng.choice(others, size=fmax, replace=False)) if fmax else ()
        checked += 1
        bound = stretch * e.weight
        if distance_exceeds(h.adjacency, e.u, e.v, bound, excluded=frozenset(F)):
            lhs = weighted_distance(h, e.u, e.v, excluded=frozenset(F))
            return Verdict(
                False,
                Counterexample(e.id, e.u, e.v, e.weight, F, lhs, bound),
                checked,
                "sampled",
            )
    return Verdict(True, None, checked, "sampled")


def shortest_cycle_length(h: WeightedGraph) -> float:
    """Unweighted girth: for each edge, the shortest alternative path
    between its endpoints plus one.  math.inf for forests."""
    best = math.inf
    adj = [set(y for y, _ in nbrs) for nbrs in h.adjacency]
    for e in h.edges:
        # BFS from u to v in h minus this edge, truncated at best-2 hops
        limit = best - 2
        seen = {e.u}
        frontier = deque([e.u])
        hops = 0
        found = None
        while frontier and hops < limit:
            hops += 1
            nxt: deque[int] = deque()
            while frontier:
                x = frontier.popleft()
                for y in adj[x]:
                    if x == e.u and y == e.v:
                        continue
                    if y == e.v:
                        found = hops
                        break
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                if found is not None:
                    break
            if found is not None:
                break
            frontier = nxt
        if found is not None and found + 1 < best:
            best = found + 1
    return best


def size_report(h: WeightedGraph, n: int, f: int, k: int) -> dict:
    """Edge count against the target bound f^(1-1/k) * n^(1+1/k)."""
    if f < 1:
        raise ValueError("size bound needs f >= 1")
    if k < 1:
        raise ValueError("stretch parameter k must be >= 1")
    bound = f ** (1.0 - 1.0 / k) * n ** (1.0 + 1.0 / k)
    return {"edges": h.m, "bound": bound, "ratio": h.m / bound}
