"""Counter-based seed derivation so trial t's randomness depends only on (seed, t)."""
from __future__ import annotations

import hashlib
import random
import struct

MASK64 = (1 << 64) - 1


def derive_seed(master: int, *counters: int) -> int:
    h = hashlib.blake2b(digest_size=8, person=b"baranyai-ldc")
    h.update(struct.pack("<Q", master & MASK64))
    for c in counters:
        h.update(struct.pack("<Q", c & MASK64))
    return int.from_bytes(h.digest(), "little")


def trial_rng(master: int, *counters: int) -> random.Random:
    return random.Random(derive_seed(master, *counters))
