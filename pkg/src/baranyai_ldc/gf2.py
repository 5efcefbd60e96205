"""Bit-packed vectors and matrices over GF(2).

Bits are packed into Python integers: bit ``j`` of the integer holds
coordinate ``j`` (0-based). Arbitrary-precision ints give word-level XOR and
popcount over any length without a separate word array.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError


class DimensionError(ValidationError):
    pass


def parity(x: int) -> int:
    return x.bit_count() & 1


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for j in indices:
        out |= 1 << j
    return out


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError("bits set beyond vector length")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> BitVector:
        """The ``i``-th unit vector, ``i`` 1-based as in message indices."""
        if not 1 <= i <= length:
            raise IndexError(f"unit index {i} outside 1..{length}")
        return cls(length, 1 << (i - 1))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> BitVector:
        return cls(len(bits), mask_of(j for j, b in enumerate(bits) if b))

    @classmethod
    def from_str(cls, text: str) -> BitVector:
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError("bit string must contain only '0' and '1'")
        return cls(len(text), mask_of(j for j, ch in enumerate(text) if ch == "1"))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(f"coordinate {j} outside 0..{self.length - 1}")
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise DimensionError(f"length {self.length} vs {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def to_str(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.length))


def hamming_distance(y: BitVector, z: BitVector) -> int:
    """Number of coordinates where ``y`` and ``z`` differ."""
    return (y ^ z).weight()


@dataclass(frozen=True)
class BitMatrix:
    """Row-major packed matrix; ``rows[i]`` bit ``j`` is entry (i, j)."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.nrows <= 0 or self.ncols <= 0:
            raise DimensionError(f"non-positive shape {self.nrows}x{self.ncols}")
        if len(self.rows) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise DimensionError("row has bits beyond column count")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> BitMatrix:
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise DimensionError("ragged rows")
        return cls(len(data), ncols, tuple(mask_of(j for j, b in enumerate(row) if b) for row in data))

    def get(self, i: int, j: int) -> int:
        """Entry at 0-based row ``i`` and column ``j``."""
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} outside 0..{self.ncols - 1}")
        return BitVector(self.nrows, mask_of(i for i, r in enumerate(self.rows) if (r >> j) & 1))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def dump(self) -> str:
        """One '0'/'1' line per row, e.g. for golden-file comparison."""
        return "\n".join(self.row(i).to_str() for i in range(self.nrows)) + "\n"

    @classmethod
    def parse(cls, text: str) -> BitMatrix:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix dump")
        vecs = []
        for lineno, ln in enumerate(lines, 1):
            try:
                vecs.append(BitVector.from_str(ln))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        ncols = vecs[0].length
        if any(v.length != ncols for v in vecs):
            raise DimensionError("ragged rows in matrix dump")
        return cls(len(vecs), ncols, tuple(v.bits for v in vecs))


def vec_mat_mul(x: BitVector, M: BitMatrix) -> BitVector:
    """Compute ``xM`` as the XOR of the rows selected by ``x``."""
    if x.length != M.nrows:
        raise DimensionError(f"vector length {x.length} vs {M.nrows} rows")
    acc = 0
    bits = x.bits
    i = 0
    while bits:
        if bits & 1:
            acc ^= M.rows[i]
        bits >>= 1
        i += 1
    return BitVector(M.ncols, acc)


def xor_columns(M: BitMatrix, cols: Iterable[int]) -> BitVector:
    """Coordinatewise parity of the selected columns of ``M``."""
    cols = list(cols)
    for j in cols:
        if not 0 <= j < M.ncols:
            raise IndexError(f"column {j} outside 0..{M.ncols - 1}")
    # a repeated column cancels itself, matching the symmetric-difference law
    sel = 0
    for j in cols:
        sel ^= 1 << j
    return BitVector(M.nrows, mask_of(i for i, r in enumerate(M.rows) if parity(r & sel)))


def complement(M: BitMatrix) -> BitMatrix:
    full = (1 << M.ncols) - 1
    return BitMatrix(M.nrows, M.ncols, tuple(full ^ r for r in M.rows))
