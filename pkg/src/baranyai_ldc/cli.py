"""Command-line interface.

Exit status: 0 on success, 1 on validation failure (bad input, malformed
file, invalid partition), 2 when a request exceeds capacity.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .baranyai import ALGORITHMS, InvariantViolation, factorize, verify_partition
from .channel import adversarial_spread, apply, as_fraction, random_pattern
from .errors import CapacityError, ParseError, ValidationError
from .exact_cover import OracleGaveUp
from .experiments import (
    BASELINE_COLUMNS,
    RATE_COLUMNS,
    ExperimentConfig,
    rate_table,
    run_baseline,
    run_simulation,
    write_table,
)
from .gf2 import BitVector
from .ldc import build_code, encode, local_decode, parse_code
from .seeding import trial_rng

EXIT_OK, EXIT_INVALID, EXIT_CAPACITY = 0, 1, 2

def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    return Path(path).read_text()


def _read_word(path: str) -> BitVector:
    lines = [ln for ln in _read(path).splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ParseError(1, "word file must hold exactly one line of bits")
    try:
        return BitVector.from_str(lines[0])
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None


def cmd_partition(args) -> int:
    p = factorize(args.m, args.u, args.algorithm)
    verdict = verify_partition(p)
    _emit(p.to_text(), args.out)
    if verdict.valid:
        print(f"verdict: valid ({p.k} classes)", file=sys.stderr)
        return EXIT_OK
    for v in verdict.violations:
        print(f"violation: {v}", file=sys.stderr)
    return EXIT_INVALID


def cmd_build(args) -> int:
    code = build_code(args.rho, args.u, algorithm=args.algorithm)
    _emit(code.to_text(), args.out)
    print(" ".join(f"{k}={v}" for k, v in code.params.manifest().items()), file=sys.stderr)
    return EXIT_OK


def cmd_encode(args) -> int:
    code = parse_code(_read(args.code))
    x = BitVector.from_str(args.message)
    if x.length != code.params.n:
        raise ValidationError(f"message has {x.length} bits, code expects {code.params.n}")
    _emit(encode(code, x).to_str() + "\n", args.out)
    return EXIT_OK


def cmd_corrupt(args) -> int:
    code = parse_code(_read(args.code))
    y = _read_word(args.word)
    if args.adversarial is not None:
        if args.index is None:
            raise ValidationError("--adversarial needs --index")
        pattern = adversarial_spread(code, args.index, args.adversarial)
    else:
        pattern = random_pattern(code.params.N, args.delta, trial_rng(args.seed))
    _emit(apply(pattern, y).to_str() + "\n", args.out)
    if args.pattern_out:
        Path(args.pattern_out).write_text(pattern.to_text())
    print(f"flipped {pattern.weight} coordinates: {list(pattern.flipped)}", file=sys.stderr)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = parse_code(_read(args.code))
    y = _read_word(args.word)
    if args.trials <= 1:
        reads = []
        bit = local_decode(code, y, args.index, trial_rng(args.seed), reads)
        print(f"bit {bit}")
        print("read " + " ".join(map(str, reads)))
        return EXIT_OK
    ones = 0
    for t in range(args.trials):
        ones += local_decode(code, y, args.index, trial_rng(args.seed, t))
    print(f"trials {args.trials} ones {ones} zeros {args.trials - ones}")
    if args.message:
        x = BitVector.from_str(args.message)
        want = x[args.index - 1]
        hits = ones if want else args.trials - ones
        print(f"success {hits}/{args.trials} = {hits / args.trials:.6f}")
    return EXIT_OK


def _indices(values: Optional[Sequence[str]]) -> Optional[list[int]]:
    if not values or "all" in values:
        return None
    out = []
    for v in values:
        out.extend(int(t) for t in v.split(",") if t)
    return out


def cmd_simulate(args) -> int:
    config = ExperimentConfig(
        rho=args.rho, u=args.u, delta=args.delta, trials=args.trials, seed=args.seed,
        indices=_indices(args.index), output=args.out, format=args.format, workers=args.workers,
    )
    report = run_simulation(config)
    for notice in report.notices:
        print(f"notice: {notice}", file=sys.stderr)
    _emit(report.render(timing=args.timing), args.out)
    print(f"wall time {report.wall_time:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_rate_table(args) -> int:
    rhos = [int(t) for v in args.rho for t in str(v).split(",") if t]
    _emit(write_table(rate_table(rhos, args.u_max), RATE_COLUMNS, args.format), args.out)
    return EXIT_OK


def cmd_baseline(args) -> int:
    rows = run_baseline(args.n, args.delta, args.trials, args.seed, args.patterns)
    _emit(write_table(rows, BASELINE_COLUMNS, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="baranyai-ldc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="build and verify a Baranyai partition of K_m^u")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("build", help="construct a code and write it to a file")
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("encode", help="encode a message given as a 0/1 string, x_1 first")
    p.add_argument("--code", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="flip codeword coordinates")
    p.add_argument("--code", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--delta", type=as_fraction, default=as_fraction(0))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--adversarial", type=int, metavar="T", help="one flip in each of T decoder classes of --index")
    p.add_argument("--index", type=int)
    p.add_argument("--pattern-out")
    p.add_argument("--out")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="locally decode one message bit")
    p.add_argument("--code", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--message", help="true message, to report the success rate over --trials")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="empirical and exact decoding success")
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--delta", type=as_fraction, default=as_fraction(0))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", action="append", help="message index (repeatable, comma list, or 'all')")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("rate-table", help="codeword lengths against the entropy bound")
    p.add_argument("--rho", action="append", default=None, help="odd rho values (repeatable or comma list)")
    p.add_argument("--u-max", type=int, default=5)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rate_table)

    p = sub.add_parser("baseline", help="Walsh-Hadamard code decoding success")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=as_fraction, default=as_fraction(0))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--patterns", type=int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_baseline)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse reports usage errors with status 2, which is reserved for capacity
        return EXIT_INVALID if exc.code == 2 else (exc.code or EXIT_OK)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "rho", None) is None and args.command == "rate-table":
        args.rho = ["3,5,7,9,11"]
    try:
        return args.func(args)
    except (CapacityError, OracleGaveUp) as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValidationError, ParseError, InvariantViolation, IndexError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
