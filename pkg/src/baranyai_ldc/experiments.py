"""Experiment drivers behind the simulate, rate-table and baseline commands.

All probabilities and bounds are exact fractions written as "a/b"; only the
entropy-derived columns are floats. Trial t of index i draws every random
choice from ``trial_rng(seed, i, t)``, so results do not depend on how trials
are split across workers.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .baranyai import InvariantViolation
from .channel import apply, as_fraction, budget, random_pattern
from .errors import ValidationError
from .gf2 import BitVector, mask_of
from .hadamard import hadamard_build, hadamard_decode, hadamard_encode, hadamard_exact_success
from .ldc import CodeParams, LdcCode, build_code, encode, local_decode, success_count
from .seeding import trial_rng

log = logging.getLogger(__name__)

EXACT_LIMIT = 10**6

SIMULATE_COLUMNS = (
    "rho", "u", "n", "N", "k", "lambda", "delta", "weight", "seed", "trials", "index",
    "successes", "empirical", "exact_mean", "exact_min", "floor_tight", "floor_loose",
    "entropy", "length_bound", "rate_ok",
)
RATE_COLUMNS = ("rho", "u", "n", "N", "entropy", "length_bound", "ratio", "hadamard_length", "rate_ok", "beats_hadamard")
BASELINE_COLUMNS = (
    "n", "N", "delta", "weight", "seed", "trials", "patterns", "index", "queries",
    "successes", "empirical", "exact_mean", "exact_min", "floor",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def write_table(rows: Sequence[dict], columns: Sequence[str], fmt: str, meta: Optional[dict] = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row.get(c)) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        doc = {"meta": {k: _jsonable(v) for k, v in (meta or {}).items()}}
        doc["rows"] = [{c: _jsonable(row.get(c)) for c in columns} for row in rows]
        return json.dumps(doc, indent=2) + "\n"
    raise ValidationError(f"unknown format {fmt!r}")


@dataclass
class ExperimentConfig:
    rho: int
    u: int
    delta: Fraction = Fraction(0)
    trials: int = 1000
    seed: int = 0
    indices: Optional[list[int]] = None  # None means every index
    output: Optional[str] = None
    format: str = "csv"
    workers: int = 1
    exact_limit: int = EXACT_LIMIT

    def __post_init__(self):
        self.delta = as_fraction(self.delta)
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        if not 0 <= self.delta < 1:
            raise ValidationError(f"delta must lie in [0, 1), got {self.delta}")
        if self.format not in ("csv", "json"):
            raise ValidationError(f"format must be csv or json, got {self.format!r}")


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    params: CodeParams
    weight: int
    rows: list[dict] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    def render(self, fmt: Optional[str] = None, timing: bool = False) -> str:
        meta = dict(self.params.manifest(), delta=self.config.delta, weight=self.weight,
                    seed=self.config.seed, trials=self.config.trials, notices=self.notices)
        if timing:
            meta["wall_time"] = self.wall_time
        return write_table(self.rows, SIMULATE_COLUMNS, fmt or self.config.format, meta)


def _trial_block(code: LdcCode, delta: Fraction, seed: int, i: int, start: int, stop: int) -> int:
    n, N = code.params.n, code.params.N
    wins = 0
    for t in range(start, stop):
        rng = trial_rng(seed, i, t)
        x = BitVector(n, rng.getrandbits(n))
        y = apply(random_pattern(N, delta, rng), encode(code, x))
        wins += local_decode(code, y, i, rng) == x[i - 1]
    return wins


def _exact_over_patterns(code: LdcCode, weight: int, i: int) -> tuple[Fraction, Fraction]:
    """Mean and minimum success over every pattern of the given weight."""
    k = code.params.k
    total = 0
    worst = k
    count = 0
    for flipped in combinations(range(code.params.N), weight):
        good = success_count(code, mask_of(flipped), i)
        total += good
        worst = min(worst, good)
        count += 1
    return Fraction(total, k * count), Fraction(worst, k)


def run_simulation(config: ExperimentConfig, code: Optional[LdcCode] = None) -> ExperimentReport:
    started = time.perf_counter()
    code = code or build_code(config.rho, config.u)
    p = code.params
    indices = config.indices or list(range(1, p.n + 1))
    for i in indices:
        if not 1 <= i <= p.n:
            raise ValidationError(f"index {i} outside 1..{p.n}")
    delta = config.delta
    weight = budget(p.N, delta)
    report = ExperimentReport(config, p, weight)

    exact = math.comb(p.N, weight) <= config.exact_limit
    if not exact:
        report.notices.append(
            f"exact mode skipped: C({p.N},{weight}) = {math.comb(p.N, weight)} patterns exceeds {config.exact_limit}"
        )
        log.warning(report.notices[-1])

    wins = {i: 0 for i in indices}
    if config.workers > 1:
        chunk = max(1, config.trials // config.workers)
        spans = [(i, s, min(s + chunk, config.trials)) for i in indices for s in range(0, config.trials, chunk)]
        with ProcessPoolExecutor(config.workers) as pool:
            futures = [(i, pool.submit(_trial_block, code, delta, config.seed, i, a, b)) for i, a, b in spans]
            for i, fut in futures:
                wins[i] += fut.result()
    else:
        for i in indices:
            wins[i] = _trial_block(code, delta, config.seed, i, 0, config.trials)

    floor_tight = 1 - p.error_bound(delta)
    floor_loose = 1 - p.loose_error_bound(delta)
    entropy = p.entropy_exponent()
    for i in indices:
        exact_mean = exact_min = None
        if exact:
            exact_mean, exact_min = _exact_over_patterns(code, weight, i)
            if exact_min < floor_tight:
                raise InvariantViolation(f"index {i}: exact success {exact_min} below floor {floor_tight}")
        report.rows.append({
            "rho": p.rho, "u": p.u, "n": p.n, "N": p.N, "k": p.k, "lambda": p.lam,
            "delta": delta, "weight": weight, "seed": config.seed, "trials": config.trials,
            "index": i, "successes": wins[i], "empirical": Fraction(wins[i], config.trials),
            "exact_mean": exact_mean, "exact_min": exact_min,
            "floor_tight": floor_tight, "floor_loose": floor_loose,
            "entropy": entropy, "length_bound": 2.0 ** (entropy * p.n), "rate_ok": p.within_rate_bound(),
        })
    report.wall_time = time.perf_counter() - started
    return report


def rate_table(rho_list: Sequence[int], u_max: int) -> list[dict]:
    rows = []
    for rho in rho_list:
        for u in range(1, u_max + 1):
            p = CodeParams(rho, u)
            h = p.entropy_exponent()
            bound = 2.0 ** (h * p.n)
            rows.append({
                "rho": rho, "u": u, "n": p.n, "N": p.N, "entropy": round(h, 4),
                "length_bound": bound, "ratio": p.N / bound, "hadamard_length": 2**p.n,
                "rate_ok": p.within_rate_bound(), "beats_hadamard": p.N < 2**p.n,
            })
    return rows


def run_baseline(n: int, delta, trials: int, seed: int, patterns: int = 10) -> list[dict]:
    """Walsh-Hadamard decoding success, sampled and exact, for every index."""
    code = hadamard_build(n)
    delta = as_fraction(delta)
    weight = budget(code.N, delta)
    floor = 1 - 2 * delta
    rows = []
    for i in range(1, n + 1):
        wins = 0
        queries = set()
        for t in range(trials):
            rng = trial_rng(seed, i, t)
            x = BitVector(n, rng.getrandbits(n))
            y = apply(random_pattern(code.N, delta, rng), hadamard_encode(code, x))
            reads = []
            wins += hadamard_decode(code, y, i, rng, reads) == x[i - 1]
            queries.add(len(reads))
        exacts = []
        for q in range(patterns):
            rng = trial_rng(seed, i, trials + q)
            x = BitVector(n, rng.getrandbits(n))
            exacts.append(hadamard_exact_success(code, random_pattern(code.N, delta, rng), x, i))
        exact_min = min(exacts) if exacts else None
        if exact_min is not None and exact_min < floor:
            raise InvariantViolation(f"index {i}: exact success {exact_min} below 1 - 2*delta = {floor}")
        rows.append({
            "n": n, "N": code.N, "delta": delta, "weight": weight, "seed": seed, "trials": trials,
            "patterns": patterns, "index": i, "queries": max(queries) if queries else 2,
            "successes": wins, "empirical": Fraction(wins, trials) if trials else None,
            "exact_mean": sum(exacts, Fraction(0)) / len(exacts) if exacts else None,
            "exact_min": exact_min, "floor": floor,
        })
    return rows
