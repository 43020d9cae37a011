"""Vertex-subset families used by the spanner constructions.

Three ways to get a family of vertex sets:

* fresh per-edge random samples (one call per tested edge),
* a pre-sampled random system of ``ceil(c * f^3 * ln n)`` sets,
* a deterministic system derived from a polynomial-evaluation hash family
  over GF(2^r), built from pairs of hash values.

The audit machinery measures the structural constants these families are
supposed to satisfy (set sizes, per-edge membership counts, fraction of
fault-avoiding sets) either exhaustively or by sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .gf2 import IRRED_POLY, GF2Field


def bernoulli_matrix(rng: np.random.Generator, count: int, n: int, f: int) -> np.ndarray:
    """(count, n) boolean matrix, each cell independently True w.p. 1/(2f).

    When 2f is a power of two the probability is hit exactly by AND-ing
    log2(2f) blocks of random bytes, which is much cheaper than drawing a
    float per cell.  Both paths give the same per-cell distribution.
    """
    if f < 1:
        raise ValueError("fault budget f must be >= 1")
    two_f = 2 * f
    if two_f & (two_f - 1) == 0:
        nbytes = (n + 7) // 8
        acc = rng.integers(0, 256, size=(count, nbytes), dtype=np.uint8)
        for _ in range(two_f.bit_length() - 2):
            acc &= rng.integers(0, 256, size=(count, nbytes), dtype=np.uint8)
        return np.unpackbits(acc, axis=1, count=n, bitorder="little").astype(bool)
    return rng.random((count, n)) < 1.0 / two_f


def sample_subgraph_masks(
    n: int, u: int, v: int, f: int, rng: np.random.Generator, count: int
) -> np.ndarray:
    """``count`` independent vertex masks, each containing u and v plus every
    other vertex independently with probability 1/(2f)."""
    if u == v:
        raise ValueError("u and v must differ")
    masks = bernoulli_matrix(rng, count, n, f)
    masks[:, u] = True
    masks[:, v] = True
    return masks


def sample_subgraph_vertices(n: int, u: int, v: int, f: int, rng: np.random.Generator) -> np.ndarray:
    """Sorted array of vertices for one sampled subgraph: {u, v} plus each
    other vertex independently with probability 1/(2f)."""
    return np.flatnonzero(sample_subgraph_masks(n, u, v, f, rng, 1)[0])


@dataclass(frozen=True)
class PolyHashFamily:
    """Polynomial-evaluation hash family over GF(2^r).

    A member is an element ``a`` of GF(2^r); hashing splits the padded key
    into ``u_bits / r_bits`` chunks and evaluates the polynomial with those
    coefficients at ``a``.  Two distinct keys collide on at most
    ``u_bits/r_bits - 1`` members, so collision probability over the family
    is below ``delta / 2^r`` with ``delta = ceil(u_bits / r_bits)``.
    """

    u_bits: int
    r_bits: int

    def __post_init__(self):
        if self.r_bits < 1 or self.r_bits not in IRRED_POLY:
            raise ValueError(f"range width {self.r_bits} unsupported")
        if self.u_bits < 1 or self.u_bits % self.r_bits != 0:
            raise ValueError("domain width must be a positive multiple of the range width")

    @property
    def size(self) -> int:
        return 1 << self.r_bits

    @property
    def range_size(self) -> int:
        return 1 << self.r_bits

    @property
    def domain_size(self) -> int:
        return 1 << self.u_bits

    @property
    def chunks(self) -> int:
        return self.u_bits // self.r_bits

    @property
    def delta(self) -> int:
        return (self.u_bits + self.r_bits - 1) // self.r_bits


def mac_hash_eval(family: PolyHashFamily, a: int, x: int) -> int:
    """Evaluate member ``a`` of the family on key ``x``.

    Horner evaluation of sum(x_i * a^i) in GF(2^r), where x_0 is the
    lowest-order chunk of x.  With a = 0 this collapses to x_0.
    """
    if not 0 <= x < family.domain_size:
        raise ValueError("key outside the padded domain")
    if not 0 <= a < family.range_size:
        raise ValueError("member index outside the range field")
    r = family.r_bits
    field_ = GF2Field(r)
    mask = family.range_size - 1
    t = family.chunks
    acc = (x >> (r * (t - 1))) & mask
    for i in range(t - 2, -1, -1):
        acc = field_.mul(acc, a) ^ ((x >> (r * i)) & mask)
    return acc


def domain_bits_for(n: int, r_bits: int) -> int:
    """Smallest multiple of r_bits whose power of two covers vertex ids 0..n-1."""
    need = max((max(n, 2) - 1).bit_length(), 1)
    return r_bits * ((need + r_bits - 1) // r_bits)


def family_for(n: int, f: int, delta_target: int | None = None) -> PolyHashFamily:
    """Pick a hash family whose range covers 4*delta*f buckets.

    The range width depends on delta and delta depends on the range, so we
    scan delta = 1, 2, ... until the induced family is delta-almost
    universal; this settles within a few rounds at the sizes we run.  An
    explicit ``delta_target`` skips the scan but must still be consistent.
    """
    if f < 1:
        raise ValueError("fault budget f must be >= 1")

    def attempt(delta: int) -> PolyHashFamily | None:
        r = max(2, (4 * delta * f - 1).bit_length())
        if r not in IRRED_POLY:
            raise ValueError(f"required hash range 2^{r} exceeds supported field sizes")
        fam = PolyHashFamily(domain_bits_for(n, r), r)
        return fam if fam.delta <= delta else None

    if delta_target is not None:
        fam = attempt(delta_target)
        if fam is None:
            raise ValueError(
                f"delta={delta_target} is inconsistent: the induced family is only "
                f"{attempt_delta_report(n, f, delta_target)}-almost universal"
            )
        return fam
    delta = 1
    while True:
        fam = attempt(delta)
        if fam is not None:
            return fam
        delta += 1


def attempt_delta_report(n: int, f: int, delta: int) -> int:
    r = max(2, (4 * delta * f - 1).bit_length())
    return (domain_bits_for(n, r) + r - 1) // r


@dataclass
class SetSystem:
    """A family of vertex subsets with membership indices.

    ``sets[i]`` is a sorted vertex array; ``per_vertex[v]`` is the sorted
    array of set indices containing v (0-based).  ``provenance`` records how
    the system was built, including the hash family for deterministic
    systems.
    """

    n: int
    alpha: int
    sets: list[np.ndarray]
    per_vertex: list[np.ndarray]
    provenance: dict = field(default_factory=dict)

    def membership_matrix(self) -> np.ndarray:
        """(alpha, n) boolean membership matrix (rebuilt on demand)."""
        m = np.zeros((self.alpha, self.n), dtype=bool)
        for i, s in enumerate(self.sets):
            m[i, s] = True
        return m

    @property
    def family_size(self) -> int | None:
        return self.provenance.get("family_size")


def _system_from_bool(n: int, member: np.ndarray, provenance: dict) -> SetSystem:
    alpha = member.shape[0]
    sets = [np.flatnonzero(member[i]).astype(np.int32) for i in range(alpha)]
    cols = member.T.copy()
    per_vertex = [np.flatnonzero(cols[v]).astype(np.int32) for v in range(n)]
    return SetSystem(n=n, alpha=alpha, sets=sets, per_vertex=per_vertex, provenance=provenance)


def random_system(n: int, f: int, c: float, rng: np.random.Generator) -> SetSystem:
    """Pre-sampled random system: ceil(c * f^3 * ln n) sets, each vertex in
    each set independently with probability 1/(2f)."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if f < 1:
        raise ValueError("fault budget f must be >= 1")
    if c <= 0:
        raise ValueError("sampling constant c must be positive")
    alpha = math.ceil(c * f**3 * math.log(n))
    member = bernoulli_matrix(rng, alpha, n, f)
    return _system_from_bool(
        n, member, {"kind": "random", "f": f, "c": c, "alpha": alpha}
    )


def hash_system(n: int, f: int, family: PolyHashFamily) -> SetSystem:
    """Deterministic system: one set per (member, unordered pair of hash
    values), containing the vertices hashed into that pair.

    Requires the range to cover the 4*delta*f buckets the fault-avoidance
    argument needs.  Output is identical across calls: sets are ordered by
    member index, then by (y, z) lexicographically.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    if f < 1:
        raise ValueError("fault budget f must be >= 1")
    if family.range_size < 4 * family.delta * f:
        raise ValueError(
            f"hash range {family.range_size} too small for 4*delta*f = {4 * family.delta * f} buckets"
        )
    size = family.range_size
    pairs = list(combinations(range(size), 2))
    alpha = family.size * len(pairs)
    member = np.zeros((alpha, n), dtype=bool)
    idx = 0
    for a in range(family.size):
        hv = np.array([mac_hash_eval(family, a, x) for x in range(n)], dtype=np.int64)
        buckets = [np.flatnonzero(hv == y) for y in range(size)]
        for y, z in pairs:
            if len(buckets[y]):
                member[idx, buckets[y]] = True
            if len(buckets[z]):
                member[idx, buckets[z]] = True
            idx += 1
    return _system_from_bool(
        n,
        member,
        {
            "kind": "hash",
            "f": f,
            "u_bits": family.u_bits,
            "r_bits": family.r_bits,
            "delta": family.delta,
            "family_size": family.size,
            "alpha": alpha,
        },
    )


def edge_membership(system: SetSystem, u: int, v: int) -> list[int]:
    """Indices of the sets containing both u and v (single linear merge of
    the two sorted per-vertex lists)."""
    if u == v:
        raise ValueError("u and v must differ")
    lu = system.per_vertex[u]
    lv = system.per_vertex[v]
    out: list[int] = []
    i = j = 0
    nu, nv = len(lu), len(lv)
    while i < nu and j < nv:
        a, b = lu[i], lv[j]
        if a == b:
            out.append(int(a))
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return out


@dataclass
class AuditReport:
    """Observed structural constants of a set system.

    ``c1`` is max set size scaled by f/n, ``c2`` is max per-edge membership
    over the norm, ``c3`` is the min fraction of fault-avoiding sets among
    an edge's sets.  The norm is the hash family size for deterministic
    systems and f*ln(n) for random ones.
    """

    kind: str
    n: int
    f: int
    alpha: int
    norm: float
    mode: str
    c1: float
    c2: float
    c3: float
    max_set_size: int
    max_edge_membership: int
    min_avoiding_count: int
    checked_pairs: int
    checked_fault_sets: int
    violations: list[str]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "f": self.f,
            "alpha": self.alpha,
            "norm": self.norm,
            "mode": self.mode,
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "max_set_size": self.max_set_size,
            "max_edge_membership": self.max_edge_membership,
            "min_avoiding_count": self.min_avoiding_count,
            "checked_pairs": self.checked_pairs,
            "checked_fault_sets": self.checked_fault_sets,
            "violations": list(self.violations),
        }


AUDIT_EXHAUSTIVE_CAP = 20_000_000


def audit_system(
    system: SetSystem,
    f: int,
    mode: str = "exhaustive",
    rng: np.random.Generator | None = None,
    trials: int = 1000,
) -> AuditReport:
    """Measure the system's constants over all vertex pairs.

    Fault sets range over subsets of V minus the pair's endpoints, of size
    min(f, n-2); smaller fault sets can only avoid more, so the minimum is
    attained at full size.  ``mode='exhaustive'`` enumerates every fault
    set (capped; errors beyond the cap), ``mode='sampled'`` draws ``trials``
    of them per pair.
    """
    n = system.n
    if f < 1:
        raise ValueError("fault budget f must be >= 1")
    if n < 2:
        raise ValueError("audit needs at least two vertices")
    fmax = min(f, n - 2)

    kind = system.provenance.get("kind", "unknown")
    if kind == "hash":
        norm = float(system.provenance["family_size"])
    else:
        norm = f * math.log(n)

    max_set = max((len(s) for s in system.sets), default=0)
    c1 = max_set * f / n

    if mode == "exhaustive":
        work = math.comb(n - 2, fmax) * n * (n - 1) // 2
        if work > AUDIT_EXHAUSTIVE_CAP:
            raise ValueError(
                f"exhaustive audit needs {work} pair/fault-set combinations, above the cap"
            )
    elif mode == "sampled":
        if rng is None:
            raise ValueError("sampled mode needs an rng")
    else:
        raise ValueError(f"unknown audit mode {mode!r}")

    # Each set as a bitmask over vertices keeps the inner loop cheap.
    set_masks = []
    for s in system.sets:
        mask = 0
        for v in s.tolist():
            mask |= 1 << v
        set_masks.append(mask)

    max_le = 0
    min_avoid = None
    checked_pairs = 0
    checked_faults = 0
    vertices = list(range(n))

    for u in range(n):
        for v in range(u + 1, n):
            le = edge_membership(system, u, v)
            checked_pairs += 1
            max_le = max(max_le, len(le))
            others = [x for x in vertices if x != u and x != v]
            if fmax == 0:
                fault_sets = [()]
            elif mode == "exhaustive":
                fault_sets = combinations(others, fmax)
            else:
                others_arr = np.array(others)
                fault_sets = [
                    tuple(rng.choice(others_arr, size=fmax, replace=False))
                    for _ in range(trials)
                ]
            le_masks = [set_masks[i] for i in le]
            for F in fault_sets:
                fmask = 0
                for x in F:
                    fmask |= 1 << int(x)
                avoid = sum(1 for m in le_masks if not (m & fmask))
                checked_faults += 1
                if min_avoid is None or avoid < min_avoid:
                    min_avoid = avoid

    min_avoid = 0 if min_avoid is None else min_avoid
    c2 = max_le / norm if norm else math.inf
    c3 = min_avoid / norm if norm else 0.0

    violations: list[str] = []
    if kind == "hash":
        delta = system.provenance["delta"]
        fam = system.provenance["family_size"]
        fiber = (1 << system.provenance["u_bits"]) // (1 << system.provenance["r_bits"])
        if max_set > 2 * fiber:
            violations.append(f"set size {max_set} exceeds two fibers ({2 * fiber})")
        if max_le > (1 + delta) * fam:
            violations.append(
                f"edge membership {max_le} exceeds (1+delta)*|family| = {(1 + delta) * fam}"
            )
        floor = (0.5 - 1.0 / (4 * f)) * fam
        if min_avoid < floor:
            violations.append(
                f"min fault-avoiding count {min_avoid} below (1/2 - 1/(4f))*|family| = {floor}"
            )
    else:
        if min_avoid == 0:
            violations.append("some (edge, fault set) pair has no fault-avoiding set")

    return AuditReport(
        kind=kind,
        n=n,
        f=f,
        alpha=system.alpha,
        norm=norm,
        mode=mode,
        c1=c1,
        c2=c2,
        c3=c3,
        max_set_size=max_set,
        max_edge_membership=max_le,
        min_avoiding_count=min_avoid,
        checked_pairs=checked_pairs,
        checked_fault_sets=checked_faults,
        violations=violations,
    )
