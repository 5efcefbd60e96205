"""The hypergraph locally decodable code over GF(2).

For odd rho >= 3 and u >= 1 let n = rho*u + 1. Codeword coordinates are the
u-subsets of {1..n} in lex order, and the generator is the complement of the
incidence matrix of K_n^u, so coordinate S of C(x) is the parity of x over
the vertices outside S.

To decode x_i, take any parallel class of K_{n-1}^u on the vertices other
than i: its rho blocks avoid i and cover every other vertex once, so the XOR
of their generator columns is 1 in row i and rho-1 (even) elsewhere, i.e.
the unit vector e_i. The decoder picks one of the k classes at random and
returns the parity of the rho coordinates it names.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .baranyai import BaranyaiPartition, InvariantViolation, factorize, relabel, verify_partition
from .channel import CorruptionPattern, Rational, apply, as_fraction
from .combinatorics import MAX_COLUMNS, binom, incidence_matrix, rank_lex
from .errors import ParseError, ValidationError
from .gf2 import BitMatrix, BitVector, DimensionError, complement, mask_of, parity, vec_mat_mul, xor_columns


class ParameterError(ValidationError):
    pass


def binary_entropy(s: float) -> float:
    if s in (0, 1):
        return 0.0
    return -s * math.log2(s) - (1 - s) * math.log2(1 - s)


@dataclass(frozen=True)
class CodeParams:
    rho: int
    u: int

    def __post_init__(self):
        if self.rho < 3 or self.rho % 2 == 0:
            raise ParameterError(f"query count rho must be odd and >= 3, got {self.rho}")
        if self.u < 1:
            raise ParameterError(f"u must be >= 1, got {self.u}")

    @property
    def n(self) -> int:
        return self.rho * self.u + 1

    @property
    def N(self) -> int:
        return math.comb(self.n, self.u)

    @property
    def lam(self) -> Fraction:
        return 1 - Fraction(self.u, self.n)

    @property
    def k(self) -> int:
        return math.comb(self.n - 2, self.u - 1)

    def entropy_exponent(self) -> float:
        """H(1/rho); the codeword length is at most 2**(H(1/rho) * n)."""
        return binary_entropy(1 / self.rho)

    def within_rate_bound(self) -> bool:
        """Exact test of C(n,u) <= 2**(H(1/rho) n).

        Raising both sides to the power rho turns the bound into the integer
        inequality N**rho * (rho-1)**(n(rho-1)) <= rho**(n rho).
        """
        r, n = self.rho, self.n
        return self.N**r * (r - 1) ** (n * (r - 1)) <= r ** (n * r)

    def error_bound(self, delta: Rational) -> Fraction:
        """rho*delta/lambda, the decoding failure bound for this code."""
        return self.rho * as_fraction(delta) / self.lam

    def loose_error_bound(self, delta: Rational) -> Fraction:
        """rho^2*delta/(rho-1), which only depends on rho."""
        return self.rho**2 * as_fraction(delta) / (self.rho - 1)

    def manifest(self) -> dict:
        return {"rho": self.rho, "u": self.u, "n": self.n, "N": self.N, "lambda": str(self.lam), "k": self.k}


@dataclass(frozen=True)
class DecoderTables:
    """``classes[i-1][j-1]`` holds the sorted column ranks of class T_ij."""

    n: int
    classes: tuple[tuple[tuple[int, ...], ...], ...]

    def classes_for(self, i: int) -> tuple[tuple[int, ...], ...]:
        if not 1 <= i <= self.n:
            raise IndexError(f"message index {i} outside 1..{self.n}")
        return self.classes[i - 1]

    def T(self, i: int) -> list[int]:
        return sorted(r for cls in self.classes_for(i) for r in cls)

    @cached_property
    def masks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(mask_of(cls) for cls in per_i) for per_i in self.classes)


@dataclass(frozen=True)
class LdcCode:
    params: CodeParams
    generator: BitMatrix
    tables: DecoderTables

    def to_text(self) -> str:
        out = ["ldc"]
        out += [f"{key} {val}" for key, val in self.params.manifest().items()]
        out.append("generator")
        out.append(self.generator.dump().rstrip("\n"))
        out.append("tables")
        for i, per_i in enumerate(self.tables.classes, 1):
            out.append(f"index {i}")
            out += [" ".join(map(str, cls)) for cls in per_i]
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> LdcCode:
        return parse_code(text)


def _tables_from_partition(base: BaranyaiPartition, n: int) -> DecoderTables:
    per_index = []
    for i in range(1, n + 1):
        # order-preserving map of 1..n-1 onto {1..n} minus i
        moved = relabel(base, {v: v if v < i else v + 1 for v in range(1, n)})
        per_index.append(tuple(tuple(sorted(rank_lex(b, n) for b in c)) for c in moved.classes))
    return DecoderTables(n, tuple(per_index))


def check_code(code: LdcCode) -> None:
    """Re-check every structural invariant; raises on the first failure."""
    p = code.params
    n, N, k, rho = p.n, p.N, p.k, p.rho
    if p.lam * N != math.comb(n - 1, p.u) or p.lam * N / rho != k:
        raise InvariantViolation(f"parameter identities fail for rho={rho}, u={p.u}")
    if code.generator != complement(incidence_matrix(n, p.u)):
        raise InvariantViolation("generator is not the complemented incidence matrix")
    tables = code.tables
    if tables.n != n or len(tables.classes) != n:
        raise InvariantViolation("decoder tables do not cover every message index")
    for i in range(1, n + 1):
        expected_T = [j for j in range(N) if code.generator.get(i - 1, j)]
        per_i = tables.classes_for(i)
        if len(per_i) != k or any(len(c) != rho for c in per_i):
            raise InvariantViolation(f"index {i}: expected {k} classes of size {rho}")
        if tables.T(i) != expected_T:
            raise InvariantViolation(f"index {i}: classes do not partition T_{i}")
        e_i = BitVector.unit(n, i)
        for j, c in enumerate(per_i, 1):
            if xor_columns(code.generator, c) != e_i:
                raise InvariantViolation(f"decoding identity fails at i={i}, j={j}")


def build_code(
    rho: int, u: int, partition: Optional[BaranyaiPartition] = None, algorithm: str = "auto"
) -> LdcCode:
    """Construct the code, its decoder tables, and verify every decoding set.

    One partition of K_{n-1}^u is computed (or taken from ``partition``) and
    shifted onto {1..n} minus i for each message index i.
    """
    params = CodeParams(rho, u)
    n = params.n
    binom(n, u, limit=MAX_COLUMNS)
    if partition is None:
        partition = factorize(n - 1, u, algorithm)
    if partition.m != n - 1 or partition.u != u or partition.vertex_set != tuple(range(1, n)):
        raise ValidationError(f"partition must be of K_{n - 1}^{u} on labels 1..{n - 1}")
    verdict = verify_partition(partition)
    if not verdict:
        raise ValidationError("invalid partition: " + "; ".join(verdict.violations[:5]))
    generator = complement(incidence_matrix(n, u))
    code = LdcCode(params, generator, _tables_from_partition(partition, n))
    check_code(code)
    return code


def encode(code: LdcCode, x: BitVector) -> BitVector:
    return vec_mat_mul(x, code.generator)


def decode_with_class(code: LdcCode, y: BitVector, i: int, j: int, reads: Optional[list] = None) -> int:
    """Parity of the coordinates of ``y`` named by class T_ij (j is 1-based)."""
    if y.length != code.params.N:
        raise DimensionError(f"word length {y.length}, expected {code.params.N}")
    coords = code.tables.classes_for(i)[j - 1]
    bit = 0
    for ell in coords:
        bit ^= y[ell]
    if reads is not None:
        reads.extend(coords)
    return bit


def local_decode(code: LdcCode, y: BitVector, i: int, rng: random.Random, reads: Optional[list] = None) -> int:
    """Recover x_i from a possibly corrupted word with rho queries.

    ``reads``, when given, is extended with every coordinate looked at.
    """
    code.tables.classes_for(i)
    j = rng.randrange(code.params.k) + 1
    return decode_with_class(code, y, i, j, reads)


def exact_success_prob(code: LdcCode, pattern: CorruptionPattern, x: BitVector, i: int) -> Fraction:
    """Probability over the decoder's class choice that it returns x_i.

    Enumerates all k classes against the corrupted word. A class holding an
    even number of flips still decodes correctly and is counted as a success.
    """
    y = apply(pattern, encode(code, x))
    want = x[i - 1]
    k = code.params.k
    good = sum(decode_with_class(code, y, i, j) == want for j in range(1, k + 1))
    return Fraction(good, k)


def bad_class_count(code: LdcCode, pattern: CorruptionPattern, i: int) -> int:
    """Classes of index i with at least one flipped coordinate."""
    m = pattern.mask
    return sum(1 for cm in code.tables.masks[i - 1] if cm & m)


def success_count(code: LdcCode, pattern_mask: int, i: int) -> int:
    """Classes of index i that still decode correctly under the given flips."""
    return sum(1 for cm in code.tables.masks[i - 1] if not parity(cm & pattern_mask))


def parse_code(text: str) -> LdcCode:
    """Read the text format written by ``LdcCode.to_text`` and re-validate it."""
    lines = text.splitlines()
    pos = 0

    def take() -> tuple[int, str]:
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            raise ParseError(len(lines), "unexpected end of file")
        pos += 1
        return pos, lines[pos - 1].strip()

    no, ln = take()
    if ln != "ldc":
        raise ParseError(no, "expected 'ldc' header")
    manifest = {}
    for key in ("rho", "u", "n", "N", "lambda", "k"):
        no, ln = take()
        parts = ln.split()
        if len(parts) != 2 or parts[0] != key:
            raise ParseError(no, f"expected '{key} <value>'")
        manifest[key] = parts[1]
    try:
        params = CodeParams(int(manifest["rho"]), int(manifest["u"]))
    except (ValueError, ValidationError) as exc:
        raise ParseError(no, f"bad parameters: {exc}") from None
    if params.manifest() != {key: (val if key == "lambda" else int(val)) for key, val in manifest.items()}:
        raise ParseError(no, "manifest fields inconsistent with rho and u")

    no, ln = take()
    if ln != "generator":
        raise ParseError(no, "expected 'generator'")
    rows = []
    for _ in range(params.n):
        no, ln = take()
        try:
            v = BitVector.from_str(ln)
        except ValueError as exc:
            raise ParseError(no, str(exc)) from None
        if v.length != params.N:
            raise ParseError(no, f"row has {v.length} bits, expected {params.N}")
        rows.append(v.bits)
    generator = BitMatrix(params.n, params.N, tuple(rows))

    no, ln = take()
    if ln != "tables":
        raise ParseError(no, "expected 'tables'")
    per_index = []
    for i in range(1, params.n + 1):
        no, ln = take()
        if ln != f"index {i}":
            raise ParseError(no, f"expected 'index {i}'")
        per_i = []
        for _ in range(params.k):
            no, ln = take()
            try:
                ranks = tuple(int(t) for t in ln.split())
            except ValueError:
                raise ParseError(no, "non-integer column rank") from None
            if len(ranks) != params.rho:
                raise ParseError(no, f"expected {params.rho} ranks")
            per_i.append(ranks)
        per_index.append(tuple(per_i))
    code = LdcCode(params, generator, DecoderTables(params.n, tuple(per_index)))
    try:
        check_code(code)
    except (InvariantViolation, IndexError) as exc:
        raise ParseError(no, f"code fails validation: {exc}") from None
    return code
