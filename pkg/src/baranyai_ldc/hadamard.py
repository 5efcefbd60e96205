"""Walsh-Hadamard code, the classical 2-query baseline.

Coordinates are indexed by v in 0..2**n-1, read as the bit string
v_1 v_2 ... v_n with v_1 most significant, so for n=2 the order is
00, 01, 10, 11. Coordinate v of C(x) is the parity of <x, v>.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .channel import CorruptionPattern, apply
from .errors import CapacityError
from .gf2 import BitVector, DimensionError, parity

MAX_HADAMARD_N = 20


@dataclass(frozen=True)
class HadamardCode:
    n: int

    @property
    def N(self) -> int:
        return 1 << self.n

    def unit(self, i: int) -> int:
        """Coordinate label of e_i."""
        if not 1 <= i <= self.n:
            raise IndexError(f"message index {i} outside 1..{self.n}")
        return 1 << (self.n - i)

    def label_of(self, x: BitVector) -> int:
        return sum(1 << (self.n - i) for i in range(1, self.n + 1) if x[i - 1])


def hadamard_build(n: int) -> HadamardCode:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > MAX_HADAMARD_N:
        raise CapacityError(f"2**{n} coordinates exceeds the limit 2**{MAX_HADAMARD_N}")
    return HadamardCode(n)


def hadamard_encode(code: HadamardCode, x: BitVector) -> BitVector:
    if x.length != code.n:
        raise DimensionError(f"message length {x.length}, expected {code.n}")
    xm = code.label_of(x)
    bits = 0
    for v in range(code.N):
        if parity(xm & v):
            bits |= 1 << v
    return BitVector(code.N, bits)


def hadamard_decode(
    code: HadamardCode, y: BitVector, i: int, rng: random.Random, reads: Optional[list] = None
) -> int:
    """Read y at a random v and at v + e_i; return their sum."""
    e = code.unit(i)
    v = rng.randrange(code.N)
    w = v ^ e
    if reads is not None:
        reads.extend((v, w))
    return y[v] ^ y[w]


def hadamard_exact_success(code: HadamardCode, pattern: CorruptionPattern, x: BitVector, i: int) -> Fraction:
    """Fraction of the 2**n decoder choices of v that return x_i."""
    y = apply(pattern, hadamard_encode(code, x))
    e = code.unit(i)
    want = x[i - 1]
    bits = y.bits
    good = sum(((bits >> v) ^ (bits >> (v ^ e))) & 1 == want for v in range(code.N))
    return Fraction(good, code.N)
