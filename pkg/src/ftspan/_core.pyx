# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled hot kernels.

Two workloads dominate the spanner builds: maintaining hop-bounded
reachability inside thousands of sampled subgraphs while edges stream in,
and running hop-bounded BFS over freshly sampled vertex masks.  Both are
implemented here over flat C buffers; ftspan._pure holds the fallback
implementations selected when this module is not built.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int16_t, int32_t, uint8_t, uint64_t
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "compiled"


cdef class HopMatrix:
    """All-pairs hop distances of a growing unweighted graph, capped.

    Distances above ``max_hops`` are stored as the sentinel ``max_hops+1``.
    ``insert`` keeps every entry exact below the cap; ``within`` is a plain
    array lookup.  The cap bounds intermediate sums so everything fits in
    one byte.
    """

    cdef public int n
    cdef public int max_hops
    cdef public int cap
    cdef uint8_t[:, ::1] d
    cdef uint8_t[::1] scr_u
    cdef uint8_t[::1] scr_v
    cdef readonly object dist_array

    def __init__(self, int n, int max_hops):
        if max_hops < 1 or max_hops > 120:
            raise ValueError("max_hops out of supported range (1..120)")
        if n < 0:
            raise ValueError("negative vertex count")
        self.n = n
        self.max_hops = max_hops
        self.cap = max_hops + 1
        arr = np.full((n, n), self.cap, dtype=np.uint8)
        if n:
            np.fill_diagonal(arr, 0)
        self.dist_array = arr
        self.d = arr
        scratch = np.empty((2, n), dtype=np.uint8)
        self.scr_u = scratch[0]
        self.scr_v = scratch[1]

    cpdef bint within(self, int u, int v):
        """True iff u and v are currently within max_hops hops."""
        return self.d[u, v] <= self.max_hops

    cpdef int distance(self, int u, int v):
        """Capped hop distance; max_hops+1 stands for 'farther than that'."""
        return self.d[u, v]

    cpdef insert(self, int u, int v):
        """Add the undirected edge (u, v) and restore exactness everywhere.

        A row a can only improve when its distances to u and v differ by at
        least 2, so most rows are skipped outright once the graph fills in.
        """
        self._insert(u, v)

    cdef void _insert(self, int u, int v):
        cdef int n = self.n
        cdef uint8_t[:, ::1] d = self.d
        cdef uint8_t* ru
        cdef uint8_t* rv
        cdef int a, b, du, dv, via_u, via_v, cand
        cdef uint8_t* row
        if d[u, v] <= 1:
            return
        ru = &self.scr_u[0]
        rv = &self.scr_v[0]
        memcpy(ru, &d[u, 0], n)
        memcpy(rv, &d[v, 0], n)
        for a in range(n):
            du = ru[a]
            dv = rv[a]
            if du - dv >= 2 or dv - du >= 2:
                via_u = du + 1
                via_v = dv + 1
                row = &d[a, 0]
                for b in range(n):
                    cand = via_u + rv[b]
                    if via_v + ru[b] < cand:
                        cand = via_v + ru[b]
                    if cand < row[b]:
                        row[b] = <uint8_t> cand
    # The update reads only the snapshots ru/rv, so rows u and v themselves
    # are handled by the same loop and symmetry is preserved.


def count_far_pairs(list structs, int32_t[::1] idx, int16_t[::1] lu, int16_t[::1] lv):
    """How many of the selected structures have their local pair farther
    than max_hops apart.  idx selects structures; lu/lv are local ids."""
    cdef Py_ssize_t j, m = idx.shape[0]
    cdef int far = 0
    cdef HopMatrix hm
    for j in range(m):
        hm = <HopMatrix> structs[idx[j]]
        if hm.d[lu[j], lv[j]] > hm.max_hops:
            far += 1
    return far


def insert_pairs(list structs, int32_t[::1] idx, int16_t[::1] lu, int16_t[::1] lv):
    """Insert the local edge into every selected structure."""
    cdef Py_ssize_t j, m = idx.shape[0]
    cdef HopMatrix hm
    for j in range(m):
        hm = <HopMatrix> structs[idx[j]]
        hm._insert(lu[j], lv[j])


def count_far_unit(
    uint64_t[:, ::1] adj_bits,
    uint64_t[:, ::1] masks,
    int u,
    int v,
    int max_hops,
):
    """Count sampled masks whose induced subgraph keeps u more than
    max_hops hops away from v.

    adj_bits is the current spanner adjacency as bit rows; each mask row is
    a vertex subset (with bits u and v set by the caller).  One truncated
    bitset BFS per mask, with early exit as soon as v is reached.
    """
    cdef Py_ssize_t nmask = masks.shape[0]
    cdef int W = adj_bits.shape[1]
    cdef int far = 0
    cdef int hop, wi, wj, base, vert
    cdef Py_ssize_t s
    cdef uint64_t word, bit_v, have
    cdef int vw = v >> 6
    cdef uint64_t vb = (<uint64_t> 1) << (v & 63)
    cdef uint64_t[::1] reached_mv, frontier_mv, nxt_mv
    scratch = np.zeros((3, W), dtype=np.uint64)
    reached_mv = scratch[0]
    frontier_mv = scratch[1]
    nxt_mv = scratch[2]
    cdef uint64_t* reached = &reached_mv[0]
    cdef uint64_t* frontier = &frontier_mv[0]
    cdef uint64_t* nxt = &nxt_mv[0]
    cdef uint64_t* tmp
    cdef const uint64_t* mask
    cdef const uint64_t* arow
    cdef bint found

    for s in range(nmask):
        mask = &masks[s, 0]
        memset(reached, 0, W * 8)
        memset(frontier, 0, W * 8)
        reached[u >> 6] = (<uint64_t> 1) << (u & 63)
        frontier[u >> 6] = reached[u >> 6]
        found = False
        for hop in range(max_hops):
            memset(nxt, 0, W * 8)
            for wi in range(W):
                word = frontier[wi]
                base = wi << 6
                while word:
                    vert = base + __builtin_ctzll(word)
                    word &= word - 1
                    arow = &adj_bits[vert, 0]
                    for wj in range(W):
                        nxt[wj] |= arow[wj]
            have = 0
            for wj in range(W):
                nxt[wj] &= mask[wj] & ~reached[wj]
                have |= nxt[wj]
            if nxt[vw] & vb:
                found = True
                break
            if have == 0:
                break
            for wj in range(W):
                reached[wj] |= nxt[wj]
            tmp = frontier
            frontier = nxt
            nxt = tmp
        if not found:
            far += 1
    return far
