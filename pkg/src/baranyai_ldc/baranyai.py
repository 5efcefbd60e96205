"""Partitions of the complete hypergraph K_m^u into parallel classes (u | m).

A parallel class is a set of m/u pairwise disjoint u-subsets covering every
vertex once; a full partition uses C(m-1, u-1) of them and every u-subset of
the vertex set exactly once.

The general construction adds the vertices 1..m one at a time. Each class
carries m/u growing parts; at stage s every part is a subset of {1..s}, and
the number of parts equal to a given A is exactly C(m-s, u-|A|). Adding
vertex s+1 means choosing, in every class, one part to absorb it so that
exactly C(m-s-1, u-|A|-1) parts equal to A are chosen. Sending
(u-|A|)/(m-s) units from each class to each of its parts is a fractional
solution, so an integral max flow with the same value exists and gives the
choice.
"""
from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .combinatorics import MAX_COLUMNS, KSubset, binom
from .errors import DivisibilityError, ParseError, ValidationError
from .flow import bipartite_b_matching

log = logging.getLogger(__name__)

ParallelClass = tuple[KSubset, ...]


class InvariantViolation(RuntimeError):
    """The flow construction reached a state its invariant rules out."""


@dataclass(frozen=True)
class BaranyaiPartition:
    m: int
    u: int
    classes: tuple[ParallelClass, ...]
    # None means the standard labels 1..m
    vertices: Optional[tuple[int, ...]] = None

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def vertex_set(self) -> tuple[int, ...]:
        return self.vertices if self.vertices is not None else tuple(range(1, self.m + 1))

    def as_sets(self) -> set[frozenset[frozenset[int]]]:
        """Order-free view used for set-level comparisons."""
        return {frozenset(frozenset(b) for b in cls) for cls in self.classes}

    def to_text(self) -> str:
        lines = [f"baranyai {self.m} {self.u} {self.k}"]
        for cls in self.classes:
            lines.append("|".join(" ".join(map(str, b)) for b in cls))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> BaranyaiPartition:
        lines = text.splitlines()
        if not lines:
            raise ParseError(1, "empty partition file")
        head = lines[0].split()
        if len(head) != 4 or head[0] != "baranyai":
            raise ParseError(1, "expected header 'baranyai m u k'")
        try:
            m, u, k = (int(t) for t in head[1:])
        except ValueError:
            raise ParseError(1, "non-integer header field") from None
        body = [(i, ln) for i, ln in enumerate(lines[1:], 2) if ln.strip()]
        if len(body) != k:
            raise ParseError(len(lines), f"header declares {k} classes, found {len(body)}")
        classes = []
        for lineno, ln in body:
            try:
                blocks = tuple(_normalize_block(int(t) for t in part.split()) for part in ln.split("|"))
            except ValueError:
                raise ParseError(lineno, f"malformed class line {ln!r}") from None
            classes.append(tuple(sorted(blocks)))
        return cls(m, u, tuple(classes), _infer_vertices(m, classes))


def _infer_vertices(m: int, classes) -> Optional[tuple[int, ...]]:
    verts = tuple(sorted({v for cls in classes for b in cls for v in b}))
    return None if not verts or verts == tuple(range(1, m + 1)) else verts


def _normalize_block(vals) -> KSubset:
    return tuple(sorted(vals))


def _make_partition(m: int, u: int, classes, vertices=None) -> BaranyaiPartition:
    return BaranyaiPartition(
        m, u, tuple(tuple(sorted(_normalize_block(b) for b in cls)) for cls in classes), vertices
    )


def _check_divisible(m: int, u: int) -> None:
    if not 1 <= u <= m:
        raise ValidationError(f"need 1 <= u <= m, got m={m}, u={u}")
    if m % u:
        raise DivisibilityError(f"u={u} does not divide m={m}")


@dataclass
class Verdict:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def verify_partition(p: BaranyaiPartition) -> Verdict:
    """Check every class is a perfect matching and every u-subset is used once."""
    verdict = Verdict()
    bad = verdict.violations
    verts = p.vertex_set
    vset = set(verts)
    if len(vset) != p.m:
        bad.append(f"vertex set has {len(vset)} labels, expected {p.m}")
    if p.u < 1 or p.m % p.u:
        bad.append(f"u={p.u} does not divide m={p.m}")
        return verdict

    expected_k = math.comb(p.m - 1, p.u - 1)
    if p.k != expected_k:
        bad.append(f"class count {p.k}, expected C({p.m - 1},{p.u - 1}) = {expected_k}")

    seen: dict[KSubset, list[int]] = defaultdict(list)
    for c, cls in enumerate(p.classes):
        if len(cls) != p.m // p.u:
            bad.append(f"class {c}: {len(cls)} blocks, expected {p.m // p.u}")
        cover = Counter()
        for b, block in enumerate(cls):
            if len(block) != p.u or len(set(block)) != p.u:
                bad.append(f"class {c} block {b} {block}: not a {p.u}-subset")
            for v in block:
                if v not in vset:
                    bad.append(f"class {c} block {b} {block}: label {v} outside vertex set")
            cover.update(block)
            seen[_normalize_block(block)].append(c)
        for v in verts:
            if cover[v] != 1:
                bad.append(f"class {c}: vertex {v} covered {cover[v]} times")

    for block, where in seen.items():
        if len(where) > 1:
            bad.append(f"subset {block} appears {len(where)} times (classes {where})")
    if len(seen) != math.comb(p.m, p.u) or bad:
        for s in combinations(sorted(vset), p.u):
            if s not in seen:
                bad.append(f"subset {s} missing")
    return verdict


def round_robin_factorization(m: int) -> BaranyaiPartition:
    """1-factorization of K_m by the circle method.

    Vertex m sits at the centre, the other m-1 on a circle. In round r the
    centre meets circle position r and positions r+d, r-d meet for
    d = 1..m/2-1. Circle positions are labelled so that round 0 is
    {1 2, 3 4, ..., m-1 m}.
    """
    if m < 2 or m % 2:
        raise DivisibilityError(f"round robin needs even m >= 2, got {m}")
    q = m - 1
    label = {0: m - 1}
    for d in range(1, m // 2):
        label[d] = 2 * d - 1
        label[q - d] = 2 * d
    classes = []
    for r in range(q):
        cls = [(label[r], m)]
        for d in range(1, m // 2):
            cls.append((label[(r + d) % q], label[(r - d) % q]))
        classes.append(cls)
    return _make_partition(m, 2, classes)


def _stage_demands(m: int, u: int, s: int, values) -> dict[int, int]:
    return {a: math.comb(m - s - 1, u - a.bit_count() - 1) for a in values if a.bit_count() < u}


def _check_stage_invariant(parts: list[list[int]], m: int, u: int, s: int) -> None:
    counts = Counter(a for cls in parts for a in cls)
    universe = (1 << s) - 1
    for a, c in counts.items():
        want = math.comb(m - s, u - a.bit_count()) if a.bit_count() <= u else 0
        if a & ~universe or c != want:
            raise InvariantViolation(f"stage {s}: part {a:b} occurs {c} times, expected {want}")
    distinct = sum(math.comb(s, j) for j in range(u + 1) if math.comb(m - s, u - j))
    if len(counts) != distinct:
        raise InvariantViolation(f"stage {s}: {len(counts)} distinct parts, expected {distinct}")


def baranyai_flow(m: int, u: int, check_invariant: Optional[bool] = None) -> BaranyaiPartition:
    """Baranyai partition of K_m^u built vertex by vertex with integral max flows.

    ``check_invariant`` re-counts the parts after every stage; by default it
    is on for m <= 12.
    """
    _check_divisible(m, u)
    binom(m, u, limit=MAX_COLUMNS)
    if check_invariant is None:
        check_invariant = __debug__ and m <= 12
    k = math.comb(m - 1, u - 1)
    # parts as bitmasks over vertices: bit v-1 is vertex v
    parts = [[0] * (m // u) for _ in range(k)]
    if check_invariant:
        _check_stage_invariant(parts, m, u, 0)

    for s in range(m):
        adjacency = [[a for a in dict.fromkeys(cls) if a.bit_count() < u] for cls in parts]
        demand = _stage_demands(m, u, s, {a for nbrs in adjacency for a in nbrs})
        if sum(demand.values()) != k:
            raise InvariantViolation(f"stage {s}: demands sum to {sum(demand.values())}, expected {k}")
        match = bipartite_b_matching(adjacency, demand)
        if any(a is None for a in match):
            raise InvariantViolation(f"stage {s}: max flow below {k}")
        # a flow of value k with sum(demand) == k saturates every sink edge

        bit = 1 << s
        for cls, a in zip(parts, match):
            cls[cls.index(a)] |= bit
        if check_invariant:
            _check_stage_invariant(parts, m, u, s + 1)
        log.debug("baranyai_flow(%d, %d): stage %d done", m, u, s + 1)

    classes = [[tuple(v + 1 for v in range(m) if a >> v & 1) for a in cls] for cls in parts]
    return _make_partition(m, u, classes)


def relabel(p: BaranyaiPartition, bijection: Mapping[int, int]) -> BaranyaiPartition:
    """Rename every vertex through ``bijection``; it must be total and injective."""
    verts = p.vertex_set
    missing = [v for v in verts if v not in bijection]
    if missing:
        raise ValidationError(f"bijection undefined on {missing}")
    images = [bijection[v] for v in verts]
    if len(set(images)) != len(images):
        raise ValidationError("bijection is not injective on the vertex set")
    new_verts = tuple(sorted(images))
    classes = [[tuple(bijection[v] for v in b) for b in cls] for cls in p.classes]
    std = new_verts == tuple(range(1, p.m + 1))
    return _make_partition(p.m, p.u, classes, None if std else new_verts)


def partition_from_classes(m: int, u: int, classes: Sequence[Sequence[Sequence[int]]]) -> BaranyaiPartition:
    """Wrap hand-written classes (e.g. a published example) without checking them."""
    return _make_partition(m, u, classes, _infer_vertices(m, classes))


ALGORITHMS = ("auto", "roundrobin", "flow", "exactcover")


def factorize(m: int, u: int, algorithm: str = "auto") -> BaranyaiPartition:
    """Dispatch by name; "auto" is round robin for u=2 and flow otherwise."""
    if 1 <= u <= m and m % u:
        raise DivisibilityError(f"u={u} does not divide m={m}")
    if algorithm == "auto":
        algorithm = "roundrobin" if u == 2 else "flow"
    if algorithm == "roundrobin":
        if u != 2:
            raise ValidationError("round robin only builds u=2 partitions")
        return round_robin_factorization(m)
    if algorithm == "flow":
        return baranyai_flow(m, u)
    if algorithm == "exactcover":
        from .exact_cover import exact_cover_factorization

        return exact_cover_factorization(m, u)
    raise ValidationError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
