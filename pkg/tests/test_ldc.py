import random
from fractions import Fraction
from itertools import combinations

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from baranyai_ldc.baranyai import partition_from_classes
from baranyai_ldc.channel import CorruptionPattern, apply
from baranyai_ldc.combinatorics import binom, rank_lex
from baranyai_ldc.errors import CapacityError, ParseError, ValidationError
from baranyai_ldc.gf2 import BitVector, xor_columns
from baranyai_ldc.ldc import (
    CodeParams,
    LdcCode,
    ParameterError,
    bad_class_count,
    binary_entropy,
    build_code,
    decode_with_class,
    encode,
    exact_success_prob,
    local_decode,
    parse_code,
    success_count,
)

from conftest import PARTITION_6_2, GENERATOR_7_2

SMALL_CODES = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]
PAIRS_7 = list(combinations(range(1, 8), 2))


def label_sets(code, i):
    """T_ij as sets of u-subsets, for comparison against hand-listed classes."""
    subsets = list(combinations(range(1, code.params.n + 1), code.params.u))
    return {frozenset(subsets[r] for r in cls) for cls in code.tables.classes_for(i)}


def naive_success(i, x_bits, flipped):
    # independent of the library: golden generator as lists, index-7 classes as labels
    G = [[int(ch) for ch in row] for row in GENERATOR_7_2]
    y = [sum(x_bits[r] * G[r][c] for r in range(7)) % 2 for c in range(21)]
    for c in flipped:
        y[c] ^= 1
    assert i == 7
    good = 0
    for cls in PARTITION_6_2:
        bit = sum(y[PAIRS_7.index(b)] for b in cls) % 2
        good += bit == x_bits[i - 1]
    return Fraction(good, len(PARTITION_6_2))


@pytest.mark.parametrize("rho, u, n, N, lam, k", [
    (3, 2, 7, 21, Fraction(5, 7), 5),
    (3, 1, 4, 4, Fraction(3, 4), 1),
    (5, 2, 11, 55, Fraction(9, 11), 9),
])
def test_params(rho, u, n, N, lam, k):
    p = CodeParams(rho, u)
    assert (p.n, p.N, p.lam, p.k) == (n, N, lam, k)


@pytest.mark.parametrize("rho", [1, 2, 4, 0, -3])
def test_bad_rho(rho):
    with pytest.raises(ParameterError):
        CodeParams(rho, 2)


def test_capacity_refusal():
    with pytest.raises(CapacityError):
        build_code(3, 20)


def test_index7_tables(code72):
    assert code72.generator.dump().split() == GENERATOR_7_2
    assert label_sets(code72, 7) == {frozenset(cls) for cls in PARTITION_6_2}


def test_u1_code():
    code = build_code(3, 1)
    assert code.generator.dump().split() == ["0111", "1011", "1101", "1110"]
    for i in range(1, 5):
        assert code.tables.classes_for(i) == (tuple(j for j in range(4) if j != i - 1),)


def test_rho5_u2_shape():
    code = build_code(5, 2)
    assert all(len(c) == 5 for per_i in code.tables.classes for c in per_i)
    assert all(len(per_i) == 9 for per_i in code.tables.classes)


@pytest.mark.parametrize("rho, u", SMALL_CODES + [(3, 4), (5, 3)])
def test_decoding_identity_and_identities(rho, u):
    code = build_code(rho, u)
    p = code.params
    assert p.k == binom(p.n - 2, u - 1) == p.lam * p.N / rho
    assert p.lam * p.N == binom(p.n - 1, u)
    for i in range(1, p.n + 1):
        T = code.tables.T(i)
        assert len(T) == binom(p.n - 1, u)
        assert T == [r for r in range(p.N) if code.generator.get(i - 1, r)]
        for cls in code.tables.classes_for(i):
            assert xor_columns(code.generator, cls) == BitVector.unit(p.n, i)


def test_rejects_invalid_partition():
    broken = [list(c) for c in PARTITION_6_2]
    broken[0][0] = (1, 3)
    with pytest.raises(ValidationError):
        build_code(3, 2, partition=partition_from_classes(6, 2, broken))
    with pytest.raises(ValidationError):
        build_code(5, 2, partition=partition_from_classes(6, 2, PARTITION_6_2))


def test_encode(code72):
    assert encode(code72, BitVector.zeros(7)) == BitVector.zeros(21)
    assert encode(code72, BitVector.unit(7, 7)).to_str() == GENERATOR_7_2[6]
    x = BitVector.unit(7, 1) ^ BitVector.unit(7, 2)
    want = "".join(str(int(a) ^ int(b)) for a, b in zip(GENERATOR_7_2[0], GENERATOR_7_2[1]))
    assert encode(code72, x).to_str() == want


_CODE_3_3 = build_code(3, 3)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**10 - 1), st.integers(0, 2**32))
def test_uncorrupted_always_decodes(xbits, seed):
    code = _CODE_3_3
    x = BitVector(10, xbits)
    y = encode(code, x)
    rng = random.Random(seed)
    for i in range(1, 11):
        assert local_decode(code, y, i, rng) == x[i - 1]


def test_single_flip_trace(code72):
    flipped = rank_lex((1, 2), 7)
    y = apply(CorruptionPattern(21, (flipped,)), BitVector.zeros(21))
    outputs = [decode_with_class(code72, y, 7, j) for j in range(1, 6)]
    for cls, out in zip(code72.tables.classes_for(7), outputs):
        assert out == (1 if flipped in cls else 0)
    assert outputs.count(0) == 4


def test_exact_success_examples(code72):
    x = BitVector.zeros(7)
    assert exact_success_prob(code72, CorruptionPattern(21), x, 7) == 1
    single = CorruptionPattern.of(21, [rank_lex((1, 2), 7)])
    assert exact_success_prob(code72, single, x, 7) == Fraction(4, 5) == naive_success(7, [0] * 7, single.flipped)
    inside = CorruptionPattern.of(21, [rank_lex(b, 7) for b in PARTITION_6_2[0]])
    assert exact_success_prob(code72, inside, x, 7) == naive_success(7, [0] * 7, inside.flipped) == Fraction(4, 5)


def test_exact_success_against_naive_oracle(code72):
    rng = random.Random(99)
    for _ in range(300):
        xb = [rng.getrandbits(1) for _ in range(7)]
        flipped = sorted(rng.sample(range(21), rng.randint(0, 6)))
        pat = CorruptionPattern(21, tuple(flipped))
        got = exact_success_prob(code72, pat, BitVector.from_bits(xb), 7)
        assert got == naive_success(7, xb, flipped)
        assert Fraction(success_count(code72, pat.mask, 7), 5) == got


def test_success_floor_small_weights(code72_auto):
    code = code72_auto
    x = BitVector(7, 0b1011001)
    for w in range(0, 3):
        for flipped in combinations(range(21), w):
            pat = CorruptionPattern(21, flipped)
            for i in range(1, 8):
                p = exact_success_prob(code, pat, x, i)
                assert p >= 1 - Fraction(bad_class_count(code, pat, i), 5) >= 1 - Fraction(w, 5)


@pytest.mark.parametrize("rho, u", SMALL_CODES)
def test_query_budget(rho, u):
    code = build_code(rho, u)
    rng = random.Random(rho * 100 + u)
    for _ in range(500):
        y = BitVector(code.params.N, rng.getrandbits(code.params.N))
        reads = []
        local_decode(code, y, rng.randint(1, code.params.n), rng, reads)
        assert len(reads) == rho


def test_decode_is_deterministic_given_seed(code72):
    y = BitVector(21, 0b101100111000101011101)
    a = [local_decode(code72, y, 3, random.Random(5)) for _ in range(3)]
    assert len(set(a)) == 1


def test_index_out_of_range(code72):
    with pytest.raises(IndexError):
        local_decode(code72, BitVector.zeros(21), 8, random.Random(0))


def test_entropy():
    assert round(binary_entropy(1 / 3), 4) == 0.9183
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0) == 0.0


@pytest.mark.parametrize("rho", [3, 5, 7, 9, 11, 13])
@pytest.mark.parametrize("u", range(1, 9))
def test_rate_bound_exact_vs_high_precision(rho, u):
    p = CodeParams(rho, u)
    mpmath.mp.dps = 60
    s = mpmath.mpf(1) / rho
    H = -s * mpmath.log(s, 2) - (1 - s) * mpmath.log(1 - s, 2)
    assert p.within_rate_bound()
    assert mpmath.mpf(p.N) <= mpmath.power(2, H * p.n)


@given(st.integers(1, 20).map(lambda r: 2 * r + 1), st.integers(1, 50),
       st.fractions(min_value=Fraction(1, 10**6), max_value=Fraction(999, 1000)))
def test_loose_error_bound_dominates(rho, u, delta):
    p = CodeParams(rho, u)
    assert p.lam > 1 - Fraction(1, rho)
    assert p.error_bound(delta) < p.loose_error_bound(delta)


def test_code_text_round_trip(code72):
    text = code72.to_text()
    lines = text.splitlines()
    assert lines[:7] == ["ldc", "rho 3", "u 2", "n 7", "N 21", "lambda 5/7", "k 5"]
    assert lines[8:15] == GENERATOR_7_2
    assert parse_code(text) == code72
    big = build_code(3, 3)
    assert LdcCode.from_text(big.to_text()) == big


def test_code_parse_rejects_tampering(code72):
    lines = code72.to_text().splitlines()
    bad = list(lines)
    bad[4] = "N 22"
    with pytest.raises(ParseError, match="inconsistent"):
        parse_code("\n".join(bad))
    bad = list(lines)
    bad[8] = "100000111111111111111"
    with pytest.raises(ParseError, match="validation"):
        parse_code("\n".join(bad))
    bad = list(lines)
    i = bad.index("index 1") + 1
    a, b, c = bad[i].split()
    bad[i] = f"{a} {b} {int(c) + 1}"
    with pytest.raises(ParseError):
        parse_code("\n".join(bad))
    bad = list(lines)
    bad[9] = "01x"
    with pytest.raises(ParseError) as exc:
        parse_code("\n".join(bad))
    assert exc.value.lineno == 10
    with pytest.raises(ParseError):
        parse_code("\n".join(lines[:20]))
