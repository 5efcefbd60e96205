"""Binomials, lexicographic ranking of u-subsets, and complete-hypergraph incidence.

Vertices are 1-based labels; ranks and column indices are 0-based. A u-subset
is a strictly increasing tuple of ints, and columns of incidence matrices are
ordered lexicographically on those tuples (12, 13, ..., 56 for K_6^2).
"""
from __future__ import annotations

import math
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .errors import CapacityError, ValidationError
from .gf2 import BitMatrix

KSubset = tuple[int, ...]

# Largest column count this library will materialize as a matrix or table.
MAX_COLUMNS = 2_000_000


def binom(m: int, u: int, limit: Optional[int] = None) -> int:
    """Exact C(m, u); raises CapacityError when the value exceeds ``limit``."""
    if m < 0 or u < 0:
        raise ValidationError(f"binom({m}, {u}) needs non-negative arguments")
    value = math.comb(m, u)
    if limit is not None and value > limit:
        raise CapacityError(f"C({m},{u}) = {value} exceeds capacity {limit}")
    return value


def check_subset(s: Sequence[int], m: int, u: Optional[int] = None) -> KSubset:
    s = tuple(s)
    if u is not None and len(s) != u:
        raise ValidationError(f"subset {s} has size {len(s)}, expected {u}")
    if any(not 1 <= v <= m for v in s):
        raise ValidationError(f"subset {s} has labels outside 1..{m}")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ValidationError(f"subset {s} is not strictly increasing")
    return s


def rank_lex(s: Sequence[int], m: int) -> int:
    """0-based position of ``s`` among all |s|-subsets of 1..m in lex order."""
    s = check_subset(s, m)
    u = len(s)
    r = 0
    prev = 0
    for t, v in enumerate(s):
        # skip every subset that agrees up to position t but has a smaller entry there
        for w in range(prev + 1, v):
            r += math.comb(m - w, u - t - 1)
        prev = v
    return r


def unrank_lex(r: int, m: int, u: int) -> KSubset:
    total = binom(m, u)
    if not 0 <= r < total:
        raise IndexError(f"rank {r} outside 0..{total - 1} for C({m},{u})")
    out = []
    v = 1
    for t in range(u):
        while True:
            block = math.comb(m - v, u - t - 1)
            if r < block:
                break
            r -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def subsets_lex(m: int, u: int) -> Iterator[KSubset]:
    """All u-subsets of 1..m in rank order."""
    return combinations(range(1, m + 1), u)


def incidence_matrix(m: int, u: int) -> BitMatrix:
    """Vertex-by-edge incidence matrix of K_m^u; row ``v-1`` is vertex ``v``."""
    if not 1 <= u <= m:
        raise ValidationError(f"need 1 <= u <= m, got m={m}, u={u}")
    binom(m, u, limit=MAX_COLUMNS)
    rows = [0] * m
    for j, s in enumerate(subsets_lex(m, u)):
        bit = 1 << j
        for v in s:
            rows[v - 1] |= bit
    return BitMatrix(m, math.comb(m, u), tuple(rows))
