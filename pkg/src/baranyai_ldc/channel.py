"""Corruption patterns: which codeword coordinates the channel flips."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Union

from .errors import ParseError, ValidationError
from .gf2 import BitVector, DimensionError, mask_of

if TYPE_CHECKING:
    from .ldc import LdcCode

Rational = Union[Fraction, int, str, float]


def as_fraction(value: Rational) -> Fraction:
    """Exact rational from a Fraction, int, "a/b" or decimal string, or float.

    Floats are read through their shortest repr, so 0.05 means 1/20.
    """
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class CorruptionPattern:
    N: int
    flipped: tuple[int, ...] = ()

    def __post_init__(self):
        if any(not 0 <= j < self.N for j in self.flipped):
            raise ValidationError(f"pattern index outside 0..{self.N - 1}")
        if any(a >= b for a, b in zip(self.flipped, self.flipped[1:])):
            raise ValidationError("pattern indices must be strictly increasing")

    @classmethod
    def of(cls, N: int, indices) -> CorruptionPattern:
        idx = sorted(set(indices))
        return cls(N, tuple(idx))

    @property
    def weight(self) -> int:
        return len(self.flipped)

    @property
    def mask(self) -> int:
        return mask_of(self.flipped)

    def to_text(self) -> str:
        return "".join([f"pattern {self.N} {self.weight}\n"] + [f"{j}\n" for j in self.flipped])

    @classmethod
    def from_text(cls, text: str) -> CorruptionPattern:
        lines = text.splitlines()
        head = lines[0].split() if lines else []
        if len(head) != 3 or head[0] != "pattern":
            raise ParseError(1, "expected header 'pattern N w'")
        try:
            N, w = int(head[1]), int(head[2])
        except ValueError:
            raise ParseError(1, "non-integer header field") from None
        body = [(no, ln.strip()) for no, ln in enumerate(lines[1:], 2) if ln.strip()]
        if len(body) != w:
            raise ParseError(len(lines), f"header declares {w} indices, found {len(body)}")
        idx = []
        for no, ln in body:
            try:
                idx.append(int(ln))
            except ValueError:
                raise ParseError(no, f"not an index: {ln!r}") from None
        try:
            return cls(N, tuple(idx))
        except ValidationError as exc:
            raise ParseError(body[-1][0] if body else 1, str(exc)) from None


def budget(N: int, delta: Rational) -> int:
    """floor(delta * N), computed exactly."""
    d = as_fraction(delta)
    if not 0 <= d < 1:
        raise ValidationError(f"delta must lie in [0, 1), got {d}")
    return (d * N).numerator // (d * N).denominator


def random_pattern(N: int, delta: Rational, rng: random.Random) -> CorruptionPattern:
    """Exactly floor(delta*N) distinct coordinates, uniform without replacement."""
    w = budget(N, delta)
    return CorruptionPattern(N, tuple(sorted(rng.sample(range(N), w))))


def adversarial_spread(code: LdcCode, i: int, t: int) -> CorruptionPattern:
    """One flip in each of the first ``t`` decoder classes of index ``i``.

    The flipped coordinate is the smallest one in its class, so the result
    is deterministic; exactly t classes become bad.
    """
    k = code.params.k
    if not 0 <= t <= k:
        raise ValidationError(f"t={t} outside 0..{k}")
    classes = code.tables.classes_for(i)
    return CorruptionPattern.of(code.params.N, (min(cls) for cls in classes[:t]))


def apply(pattern: CorruptionPattern, y: BitVector) -> BitVector:
    if pattern.N != y.length:
        raise DimensionError(f"pattern length {pattern.N} vs word length {y.length}")
    return BitVector(y.length, y.bits ^ pattern.mask)
