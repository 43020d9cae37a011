"""The five spanner constructions.

All of them share the same skeleton: walk the edges in nondecreasing
weight order and keep an edge exactly when the current spanner, with some
adversarial vertex set removed, would stretch it too much.  They differ in
how that test is answered:

* ``greedy``: no faults, one exact distance query.
* ``ft_greedy_exact``: brute force over every fault set (exponential,
  desk-scale only, used as ground truth).
* ``ft_basic_randomized``: per edge, sample fresh random induced subgraphs
  and measure the fraction whose distance is too large.
* ``ft_fast_randomized``: sample one system of vertex sets up front and
  maintain hop-bounded reachability in each incrementally.
* ``ft_deterministic``: same loop, but the set system comes from a
  polynomial hash family and the threshold makes every decision certain.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .graph import WeightedGraph, distance_exceeds, from_records, sorted_edges
from .reachability import IncrementalReachability
from .setsystem import (
    SetSystem,
    family_for,
    hash_system,
    random_system,
    sample_subgraph_masks,
)

BASIC_DEFAULT_C = 384.0
BASIC_THRESHOLD = 0.25
FAST_DEFAULT_C = 64.0
FAST_DEFAULT_TAU = 0.125


@dataclass
class AlgoParams:
    """Knobs shared by the fault-tolerant constructions.

    ``c`` and ``tau`` default per algorithm when left as None.  ``delta``
    forces the hash-family universality parameter for the deterministic
    algorithm (validated); ``shortcut`` enables the early return of the
    whole input when it is already below the target size bound.
    """

    f: int
    k: int
    c: float | None = None
    tau: float | None = None
    delta: int | None = None
    seed: int | None = None
    shortcut: bool = False

    def __post_init__(self):
        if self.f < 0:
            raise ValueError("fault budget f must be >= 0")
        if self.k < 1:
            raise ValueError("stretch parameter k must be >= 1")
        if self.c is not None and self.c <= 0:
            raise ValueError("sampling constant c must be positive")
        if self.tau is not None and not 0 < self.tau < 1:
            raise ValueError("threshold tau must lie in (0, 1)")


@dataclass
class EdgeDecision:
    """Per-edge diagnostic: the measured fraction (when the algorithm uses
    one), the threshold it was compared against, and the decision."""

    edge_id: int
    accepted: bool
    fraction: float | None = None
    threshold: float | None = None
    witness: tuple[int, ...] | None = None
    note: str | None = None


@dataclass
class SpannerOutput:
    spanner: WeightedGraph
    accepted_edge_ids: list[int]
    per_edge: list[EdgeDecision]
    stats: dict = field(default_factory=dict)


def size_bound(n: int, f: int, k: int) -> float:
    """The target size f^(1-1/k) * n^(1+1/k)."""
    return f ** (1.0 - 1.0 / k) * n ** (1.0 + 1.0 / k)


def _require_fault_budget(g: WeightedGraph, f: int) -> None:
    if f < 1:
        raise ValueError("this construction needs f >= 1; use greedy for f = 0")
    if f >= g.n > 0:
        raise ValueError(f"fault budget f={f} must be smaller than n={g.n}")


def _finalize(g, accepted, per_edge, stats) -> SpannerOutput:
    spanner = from_records(g.n, sorted(accepted, key=lambda e: e.id))
    stats["accepted"] = len(accepted)
    stats["considered"] = g.m
    return SpannerOutput(
        spanner=spanner,
        accepted_edge_ids=[e.id for e in sorted(accepted, key=lambda e: e.id)],
        per_edge=per_edge,
        stats=stats,
    )


def greedy(g: WeightedGraph, k: int) -> SpannerOutput:
    """Classic (2k-1)-spanner greedy: keep an edge iff the spanner so far
    has no alternative path of weight at most (2k-1) times the edge's."""
    if k < 1:
        raise ValueError("stretch parameter k must be >= 1")
    t0 = time.perf_counter()
    stretch = 2 * k - 1
    adj: list[list[tuple[int, float]]] = [[] for _ in range(g.n)]
    accepted = []
    per_edge = []
    for e in sorted_edges(g):
        far = distance_exceeds(adj, e.u, e.v, stretch * e.weight)
        per_edge.append(EdgeDecision(e.id, far))
        if far:
            accepted.append(e)
            adj[e.u].append((e.v, e.weight))
            adj[e.v].append((e.u, e.weight))
    stats = {
        "algorithm": "greedy",
        "n": g.n,
        "m": g.m,
        "f": 0,
        "k": k,
        "preprocess_ms": 0.0,
        "main_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return _finalize(g, accepted, per_edge, stats)


EXACT_DEFAULT_CAP_N = 16
EXACT_DEFAULT_CAP_F = 3


def ft_greedy_exact(
    g: WeightedGraph,
    f: int,
    k: int,
    cap_n: int = EXACT_DEFAULT_CAP_N,
    cap_f: int = EXACT_DEFAULT_CAP_F,
) -> SpannerOutput:
    """Exact fault-tolerant greedy: accept an edge iff *some* fault set of
    size at most f currently breaks its stretch guarantee.

    The edge test enumerates every fault set, so this is exponential and
    guarded by a hard instance cap.  It is the ground-truth oracle the
    polynomial constructions are compared against.
    """
    if k < 1:
        raise ValueError("stretch parameter k must be >= 1")
    if f < 0:
        raise ValueError("fault budget f must be >= 0")
    if g.n > cap_n or f > cap_f:
        raise ValueError(
            f"instance (n={g.n}, f={f}) exceeds the brute-force cap (n<={cap_n}, f<={cap_f})"
        )
    t0 = time.perf_counter()
    stretch = 2 * k - 1
    adj: list[list[tuple[int, float]]] = [[] for _ in range(g.n)]
    accepted = []
    per_edge = []
    vertices = list(range(g.n))
    for e in sorted_edges(g):
        bound = stretch * e.weight
        others = [x for x in vertices if x != e.u and x != e.v]
        witness = None
        for size in range(0, min(f, len(others)) + 1):
            for F in combinations(others, size):
                if distance_exceeds(adj, e.u, e.v, bound, excluded=frozenset(F)):
                    witness = F
                    break
            if witness is not None:
                break
        accepted_edge = witness is not None
        per_edge.append(EdgeDecision(e.id, accepted_edge, witness=witness))
        if accepted_edge:
            accepted.append(e)
            adj[e.u].append((e.v, e.weight))
            adj[e.v].append((e.u, e.weight))
    stats = {
        "algorithm": "exact",
        "n": g.n,
        "m": g.m,
        "f": f,
        "k": k,
        "preprocess_ms": 0.0,
        "main_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return _finalize(g, accepted, per_edge, stats)


def _pack_masks(masks: np.ndarray) -> np.ndarray:
    """(count, n) bool -> (count, ceil(n/64)) uint64 bit rows."""
    count, n = masks.shape
    words = (n + 63) // 64
    packed = np.packbits(masks, axis=1, bitorder="little")
    out = np.zeros((count, words * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view(np.uint64)


def _induced_distance_exceeds(adj, u, v, bound, allowed) -> bool:
    # Dijkstra restricted to the sampled vertex set.
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
        for y, w in adj[x]:
            if not allowed[y]:
                continue
            nd = d + w
            if nd <= bound and nd < dist.get(y, math.inf):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return True


def ft_basic_randomized(
    g: WeightedGraph, params: AlgoParams, rng: np.random.Generator
) -> SpannerOutput:
    """Per-edge subgraph sampling: draw ceil(c * ln n) induced subgraphs of
    the current spanner (each keeping the endpoints plus every other vertex
    with probability 1/(2f)) and accept the edge iff at least a quarter of
    them stretch it too far.

    When all edge weights are equal the distance test reduces to a hop
    count and runs on the bitset BFS kernel; otherwise each sample runs a
    bounded Dijkstra.  Both paths consume identical random draws.
    """
    _require_fault_budget(g, params.f)
    f, k = params.f, params.k
    c = BASIC_DEFAULT_C if params.c is None else params.c
    t0 = time.perf_counter()
    stretch = 2 * k - 1
    n = g.n
    alpha = max(1, math.ceil(c * math.log(n))) if n >= 2 else 1
    weights = g.edge_weights()
    unit_mode = g.m > 0 and min(weights) == max(weights) and min(weights) > 0

    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    words = (n + 63) // 64
    adj_bits = np.zeros((n, words), dtype=np.uint64) if unit_mode else None
    preprocess_ms = (time.perf_counter() - t0) * 1000.0

    t1 = time.perf_counter()
    accepted = []
    per_edge = []
    for e in sorted_edges(g):
        masks = sample_subgraph_masks(n, e.u, e.v, f, rng, alpha)
        if unit_mode:
            far = kernels.count_far_unit(adj_bits, _pack_masks(masks), e.u, e.v, stretch)
        else:
            bound = stretch * e.weight
            far = sum(
                1
                for row in masks
                if _induced_distance_exceeds(adj, e.u, e.v, bound, row)
            )
        frac = far / alpha
        take = frac >= BASIC_THRESHOLD
        per_edge.append(EdgeDecision(e.id, take, fraction=frac, threshold=BASIC_THRESHOLD))
        if take:
            accepted.append(e)
            adj[e.u].append((e.v, e.weight))
            adj[e.v].append((e.u, e.weight))
            if unit_mode:
                adj_bits[e.u, e.v >> 6] |= np.uint64(1 << (e.v & 63))
                adj_bits[e.v, e.u >> 6] |= np.uint64(1 << (e.u & 63))
    stats = {
        "algorithm": "basic",
        "n": n,
        "m": g.m,
        "f": f,
        "k": k,
        "c": c,
        "alpha": alpha,
        "unit_mode": unit_mode,
        "backend": kernels.BACKEND,
        "preprocess_ms": preprocess_ms,
        "main_ms": (time.perf_counter() - t1) * 1000.0,
    }
    return _finalize(g, accepted, per_edge, stats)


def _shortcut_output(g: WeightedGraph, stats: dict) -> SpannerOutput:
    per_edge = [
        EdgeDecision(e.id, True, note="shortcut: input below size bound") for e in g.edges
    ]
    stats["shortcut_taken"] = True
    stats["accepted"] = g.m
    stats["considered"] = g.m
    return SpannerOutput(
        spanner=g,
        accepted_edge_ids=[e.id for e in g.edges],
        per_edge=per_edge,
        stats=stats,
    )


def _membership_greedy(
    g: WeightedGraph, k: int, tau: float, system: SetSystem, stats: dict
) -> SpannerOutput:
    """Shared main loop of the pre-sampled constructions: per edge, measure
    the fraction of its sets whose subgraph keeps the endpoints more than
    2k-1 hops apart; accept and propagate the edge when it clears tau."""
    t0 = time.perf_counter()
    n = g.n
    alpha = system.alpha
    loc = np.full((alpha, n), -1, dtype=np.int16)
    structs = []
    for i, vs in enumerate(system.sets):
        loc[i, vs] = np.arange(len(vs), dtype=np.int16)
        structs.append(IncrementalReachability(vs, k, _loc=loc[i]))
    mats = [s.mat for s in structs]
    member_t = np.ascontiguousarray(system.membership_matrix().T)
    order = sorted_edges(g)
    memberships = [
        np.flatnonzero(member_t[e.u] & member_t[e.v]).astype(np.int32) for e in order
    ]
    stats["preprocess_ms"] = stats.get("preprocess_ms", 0.0) + (time.perf_counter() - t0) * 1000.0

    t1 = time.perf_counter()
    accepted = []
    per_edge = []
    empty = 0
    for e, le in zip(order, memberships):
        if len(le) == 0:
            # A needed edge must never be dropped; an undersized system only
            # costs size, which the diagnostics expose.
            empty += 1
            per_edge.append(
                EdgeDecision(e.id, True, threshold=tau, note="empty membership, accepted defensively")
            )
            accepted.append(e)
            continue
        lu = loc[le, e.u]
        lv = loc[le, e.v]
        far = kernels.count_far_pairs(mats, le, lu, lv)
        frac = far / len(le)
        take = frac >= tau
        per_edge.append(EdgeDecision(e.id, take, fraction=frac, threshold=tau))
        if take:
            accepted.append(e)
            kernels.insert_pairs(mats, le, lu, lv)
    stats["main_ms"] = (time.perf_counter() - t1) * 1000.0
    stats["empty_membership"] = empty
    stats["backend"] = kernels.BACKEND
    stats["alpha"] = alpha
    stats["shortcut_taken"] = False
    return _finalize(g, accepted, per_edge, stats)


def ft_fast_randomized(
    g: WeightedGraph, params: AlgoParams, rng: np.random.Generator
) -> SpannerOutput:
    """Pre-sampled randomized construction: ceil(c * f^3 * ln n) random
    vertex sets drawn once, one incremental reachability structure per set,
    and a per-edge vote over the sets containing both endpoints."""
    _require_fault_budget(g, params.f)
    f, k = params.f, params.k
    c = FAST_DEFAULT_C if params.c is None else params.c
    tau = FAST_DEFAULT_TAU if params.tau is None else params.tau
    stats = {
        "algorithm": "fast",
        "n": g.n,
        "m": g.m,
        "f": f,
        "k": k,
        "c": c,
        "tau": tau,
    }
    if params.shortcut and g.m <= size_bound(g.n, f, k):
        return _shortcut_output(g, stats)
    if g.n < 2:
        return _finalize(g, [], [], stats)
    t0 = time.perf_counter()
    system = random_system(g.n, f, c, rng)
    stats["preprocess_ms"] = (time.perf_counter() - t0) * 1000.0
    return _membership_greedy(g, k, tau, system, stats)


def deterministic_tau(f: int, delta: int) -> float:
    """Threshold for the hash-system construction.

    The fault-avoidance argument guarantees at least a (1/2 - 1/(4f))
    fraction of a hash function's sets dodge any fault set, and an edge
    belongs to at most (1+delta) sets per function; the ratio of the two is
    the largest threshold that never rejects a needed edge.  For f >= 2 the
    numerator is clamped to the conventional 3/8.
    """
    avoid = min(0.375, 0.5 - 1.0 / (4.0 * f))
    return avoid / (1.0 + delta)


def ft_deterministic(g: WeightedGraph, params: AlgoParams) -> SpannerOutput:
    """Deterministic construction: the vertex sets come from pairs of hash
    values of a polynomial-evaluation family, and the threshold is derived
    from the family's guarantees, so the output is certain (not just
    high-probability) and identical across runs."""
    _require_fault_budget(g, params.f)
    f, k = params.f, params.k
    stats = {
        "algorithm": "det",
        "n": g.n,
        "m": g.m,
        "f": f,
        "k": k,
    }
    if params.shortcut and g.m <= size_bound(g.n, f, k):
        return _shortcut_output(g, stats)
    if g.n < 2:
        return _finalize(g, [], [], stats)
    t0 = time.perf_counter()
    family = family_for(g.n, f, params.delta)
    tau = deterministic_tau(f, family.delta)
    system = hash_system(g.n, f, family)
    stats["delta"] = family.delta
    stats["tau"] = tau
    stats["family_size"] = family.size
    stats["preprocess_ms"] = (time.perf_counter() - t0) * 1000.0
    return _membership_greedy(g, k, tau, system, stats)


ALGORITHMS = ("greedy", "exact", "basic", "fast", "det")


def build_spanner(
    g: WeightedGraph,
    algo: str,
    params: AlgoParams,
    rng: np.random.Generator | None = None,
) -> SpannerOutput:
    """Dispatch by algorithm name.  f = 0 routes the sampled constructions
    to plain greedy, whose test they all degenerate to."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    if algo == "greedy" or (params.f == 0 and algo in ("basic", "fast", "det")):
        return greedy(g, params.k)
    if algo == "exact":
        return ft_greedy_exact(g, params.f, params.k)
    if rng is None:
        rng = np.random.default_rng(params.seed)
    if algo == "basic":
        return ft_basic_randomized(g, params, rng)
    if algo == "fast":
        return ft_fast_randomized(g, params, rng)
    return ft_deterministic(g, params)
