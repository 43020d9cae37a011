"""Seeded benchmark graph generators."""

from __future__ import annotations

import math

import numpy as np

from .graph import WeightedGraph, normalize

KINDS = ("gnp", "gnm", "complete", "grid", "path", "cycle")


def _pairs_gnp(n: int, p: float, rng: np.random.Generator):
    if not 0.0 <= p <= 1.0:
        raise ValueError("gnp density must be a probability")
    us, vs = np.triu_indices(n, 1)
    sel = rng.random(len(us)) < p
    return list(zip(us[sel].tolist(), vs[sel].tolist()))


def _pairs_gnm(n: int, m: int, rng: np.random.Generator):
    total = n * (n - 1) // 2
    m = int(m)
    if not 0 <= m <= total:
        raise ValueError(f"gnm edge count must be in [0, {total}]")
    us, vs = np.triu_indices(n, 1)
    pick = rng.choice(total, size=m, replace=False)
    return list(zip(us[pick].tolist(), vs[pick].tolist()))


def _pairs_grid(n: int):
    rows = max(1, int(math.isqrt(n)))
    cols = (n + rows - 1) // rows
    pairs = []
    for v in range(n):
        r, c = divmod(v, cols)
        if c + 1 < cols and v + 1 < n and (v + 1) // cols == r:
            pairs.append((v, v + 1))
        if r + 1 < rows and v + cols < n:
            pairs.append((v, v + cols))
    return pairs


def gen_graph(kind: str, n: int, param=None, weights="unit", seed: int | None = 0) -> WeightedGraph:
    """Generate a normalized graph, reproducible under a fixed seed.

    ``param`` is the density knob: edge probability for gnp, edge count for
    gnm, ignored elsewhere.  ``weights`` is either "unit" or a tuple
    ("uniform", lo, hi) of per-edge uniform weights.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown graph kind {kind!r}")
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = np.random.default_rng(seed)
    if kind == "gnp":
        if param is None:
            raise ValueError("gnp needs an edge probability")
        pairs = _pairs_gnp(n, float(param), rng)
    elif kind == "gnm":
        if param is None:
            raise ValueError("gnm needs an edge count")
        pairs = _pairs_gnm(n, param, rng)
    elif kind == "complete":
        us, vs = np.triu_indices(n, 1)
        pairs = list(zip(us.tolist(), vs.tolist()))
    elif kind == "grid":
        pairs = _pairs_grid(n)
    elif kind == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    else:  # cycle
        if n < 3:
            raise ValueError("a cycle needs at least three vertices")
        pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]

    pairs.sort()
    if weights == "unit":
        ws = [1.0] * len(pairs)
    elif isinstance(weights, tuple) and len(weights) == 3 and weights[0] == "uniform":
        lo, hi = float(weights[1]), float(weights[2])
        if not 0 <= lo <= hi:
            raise ValueError("uniform weight bounds must satisfy 0 <= lo <= hi")
        ws = rng.uniform(lo, hi, size=len(pairs)).tolist()
    else:
        raise ValueError(f"unknown weight spec {weights!r}")
    return normalize([(u, v, w) for (u, v), w in zip(pairs, ws)], n)
