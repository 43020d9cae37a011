"""Arithmetic in the binary fields GF(2^r) for 1 <= r <= 32.

Field elements are ints whose bits are polynomial coefficients over GF(2).
Multiplication is carry-less polynomial multiplication followed by reduction
modulo a fixed irreducible polynomial; addition is XOR.  The modulus table
holds the lexicographically smallest irreducible polynomial of each degree
(degree 8 is the familiar 0x11b).
"""

from __future__ import annotations

# fmt: off
IRRED_POLY = {
    1: 0x3, 2: 0x7, 3: 0xb, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11b,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201b, 14: 0x4021,
    15: 0x8003, 16: 0x1002b, 17: 0x20009, 18: 0x40009, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001b,
    25: 0x2000009, 26: 0x400001b, 27: 0x8000027, 28: 0x10000003,
    29: 0x20000005, 30: 0x40000003, 31: 0x80000009, 32: 0x10000008d,
}
# fmt: on

MAX_R = max(IRRED_POLY)


def clmul(a: int, b: int) -> int:
    """Carry-less product of two polynomials over GF(2)."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def reduce_mod(a: int, modulus: int) -> int:
    mbits = modulus.bit_length()
    abits = a.bit_length()
    while abits >= mbits:
        a ^= modulus << (abits - mbits)
        abits = a.bit_length()
    return a


def gf_mul(a: int, b: int, r: int) -> int:
    """Product of a and b in GF(2^r)."""
    return reduce_mod(clmul(a, b), IRRED_POLY[r])


def gf_pow(a: int, e: int, r: int) -> int:
    result = 1
    base = a
    while e:
        if e & 1:
            result = gf_mul(result, base, r)
        base = gf_mul(base, base, r)
        e >>= 1
    return result


class GF2Field:
    """GF(2^r) with the package-wide modulus; caches nothing beyond r.

    Kept as a tiny class so callers can pass the field around instead of
    threading ``r`` through every signature.
    """

    def __init__(self, r: int):
        if r not in IRRED_POLY:
            raise ValueError(f"unsupported field degree {r} (1..{MAX_R})")
        self.r = r
        self.modulus = IRRED_POLY[r]
        self.order = 1 << r

    def mul(self, a: int, b: int) -> int:
        return reduce_mod(clmul(a, b), self.modulus)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def pow(self, a: int, e: int) -> int:
        return gf_pow(a, e, self.r)
