"""Pure-Python fallback for the compiled kernels.

Same interface as ftspan._core, different internals: the incremental
reachability structure here literally materializes the layered DAG and
keeps one descendant bit-vector per layered node (Python ints as bitsets),
melding on every directed insertion.  That makes it a structurally
independent implementation, which the test suite exploits for differential
checks, at the cost of raw speed.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


class HopMatrix:
    """Hop-bounded incremental reachability over the layered DAG.

    Layered node (v, j) for j in 0..max_hops occupies bit j*n + v.  Chain
    edges (v, j) -> (v, j+1) exist from construction, so desc[(v, j)] starts
    as the tail of v's own chain.  Reachability (u, 0) ~> (v, last layer) is
    equivalent to a hop distance of at most max_hops.
    """

    def __init__(self, n: int, max_hops: int):
        if max_hops < 1 or max_hops > 120:
            raise ValueError("max_hops out of supported range (1..120)")
        if n < 0:
            raise ValueError("negative vertex count")
        self.n = n
        self.max_hops = max_hops
        self.cap = max_hops + 1
        self.layers = max_hops + 1
        desc = [0] * (n * self.layers)
        for v in range(n):
            acc = 0
            for j in range(self.layers - 1, -1, -1):
                acc |= 1 << (j * n + v)
                desc[j * n + v] = acc
        self._desc = desc

    def _idx(self, v: int, layer: int) -> int:
        return layer * self.n + v

    def within(self, u: int, v: int) -> bool:
        """True iff u reaches v in at most max_hops hops: a single bit test."""
        target = 1 << self._idx(v, self.layers - 1)
        return bool(self._desc[self._idx(u, 0)] & target)

    def distance(self, u: int, v: int) -> int:
        """Capped hop distance, recovered from which layers of v are reachable."""
        du = self._desc[self._idx(u, 0)]
        n = self.n
        for j in range(self.layers):
            if du >> (j * n + v) & 1:
                return j
        return self.cap

    def insert(self, u: int, v: int) -> None:
        """Insert the undirected edge (u, v): 2*max_hops directed layered
        edges, each melded into every source that newly reaches it."""
        for j in range(self.layers - 1):
            self._insert_directed(self._idx(u, j), self._idx(v, j + 1))
            self._insert_directed(self._idx(v, j), self._idx(u, j + 1))

    def _insert_directed(self, x: int, y: int) -> None:
        desc = self._desc
        bx = 1 << x
        by = 1 << y
        if desc[x] & by:
            return
        dy = desc[y]
        for s, ds in enumerate(desc):
            if ds & bx and not ds & by:
                desc[s] = ds | dy


def count_far_pairs(structs, idx, lu, lv) -> int:
    far = 0
    for j in range(len(idx)):
        hm = structs[idx[j]]
        if not hm.within(int(lu[j]), int(lv[j])):
            far += 1
    return far


def insert_pairs(structs, idx, lu, lv) -> None:
    for j in range(len(idx)):
        structs[idx[j]].insert(int(lu[j]), int(lv[j]))


def count_far_unit(adj_bits: np.ndarray, masks: np.ndarray, u: int, v: int, max_hops: int) -> int:
    """Pure bitset BFS over each sampled mask; counts masks where v stays
    farther than max_hops hops from u."""
    n_words = adj_bits.shape[1]
    rows = [int.from_bytes(adj_bits[x].tobytes(), "little") for x in range(adj_bits.shape[0])]
    target = 1 << v
    far = 0
    for s in range(masks.shape[0]):
        mask = int.from_bytes(masks[s].tobytes(), "little")
        reached = 1 << u
        frontier = reached
        found = False
        for _ in range(max_hops):
            nxt = 0
            w = frontier
            while w:
                low = w & -w
                nxt |= rows[low.bit_length() - 1]
                w ^= low
            nxt &= mask & ~reached
            if nxt & target:
                found = True
                break
            if not nxt:
                break
            reached |= nxt
            frontier = nxt
        if not found:
            far += 1
    return far
