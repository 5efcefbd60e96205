"""Locally decodable codes from Baranyai partitions of complete hypergraphs."""
from .baranyai import (
    BaranyaiPartition,
    InvariantViolation,
    Verdict,
    baranyai_flow,
    factorize,
    relabel,
    round_robin_factorization,
    verify_partition,
)
from .channel import CorruptionPattern, adversarial_spread, apply, random_pattern
from .combinatorics import binom, incidence_matrix, rank_lex, unrank_lex
from .errors import CapacityError, DivisibilityError, ParseError, ValidationError
from .exact_cover import OracleGaveUp, exact_cover_factorization
from .gf2 import BitMatrix, BitVector, complement, hamming_distance, vec_mat_mul, xor_columns
from .hadamard import hadamard_build, hadamard_decode, hadamard_encode, hadamard_exact_success
from .ldc import CodeParams, LdcCode, build_code, encode, exact_success_prob, local_decode

__version__ = "0.1.0"
