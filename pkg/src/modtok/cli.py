"""Command-line interface: fit, encode, decode, verify, bench.

Exit codes: 0 success, 1 operational failure (bad data or config), 2 usage
error. Machine-readable results go to stdout, one line-oriented record per
line; all human diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .dataio import ColumnSpec, decode_file, encode_file, load_vocab
from .errors import ModtokError
from .field import FieldPrime, is_prime
from .matrix import SplitMix64, invert, random_invertible
from .radix import from_digits
from .tokenizer import TokenizerConfig, fit, load_config, save_config

EXHAUSTIVE_LIMIT = 10**8
_SCALING_DIGITS = (2, 4, 8, 16)
# Largest prime usable for the n=16 scaling row within the capacity limit.
_SCALING_PRIME_CAP = 251


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modtok",
        description="Reversible tokenization of integer ids over a prime field.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a tokenizer config for a vocabulary")
    size = p_fit.add_mutually_exclusive_group(required=True)
    size.add_argument("--vocab-size", type=int, help="number of distinct ids to cover")
    size.add_argument("--vocab-file", help="vocabulary file; its line count is the size")
    strategy = p_fit.add_mutually_exclusive_group(required=True)
    strategy.add_argument("--fix-p", type=int, help="use this prime, derive digit count")
    strategy.add_argument("--fix-n", type=int, help="use this digit count, derive prime")
    p_fit.add_argument("--seed", type=int, default=0, help="matrix generation seed")
    p_fit.add_argument("--out", required=True, help="config file to write")
    p_fit.set_defaults(func=cmd_fit)

    for name, helptext in (
        ("encode", "replace categorical columns with token digit columns"),
        ("decode", "restore categorical columns from token digit columns"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", action="append", required=True, help="config file (repeat per column)")
        p.add_argument("--column", action="append", required=True, help="column name (repeat per column)")
        p.add_argument("--vocab", action="append", required=True, help="vocabulary file (repeat per column)")
        p.add_argument("--input", required=True, help="input CSV file")
        p.add_argument("--output", required=True, help="output CSV file")
        p.set_defaults(func=cmd_encode if name == "encode" else cmd_decode)

    p_verify = sub.add_parser("verify", help="check the id<->token bijection")
    p_verify.add_argument("--config", required=True)
    mode = p_verify.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true", help="check every id below p**n")
    mode.add_argument("--samples", type=int, help="check this many seeded random ids")
    p_verify.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="measure encode/decode throughput")
    p_bench.add_argument("--config", required=True)
    p_bench.add_argument("--iterations", type=int, required=True)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def cmd_fit(args) -> int:
    if args.fix_p is not None and not is_prime(args.fix_p):
        raise UsageError(f"{args.fix_p} is not prime")
    if args.vocab_size is not None:
        vocab_size = args.vocab_size
        if vocab_size < 1:
            raise UsageError(f"vocabulary size must be >= 1, got {vocab_size}")
    else:
        vocab_size = len(load_vocab(args.vocab_file))
        if vocab_size < 1:
            raise UsageError(f"vocabulary file {args.vocab_file} is empty")
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError(f"seed must be in [0, 2**64), got {args.seed}")
    if args.fix_n is not None and args.fix_n < 1:
        raise UsageError(f"digit count must be >= 1, got {args.fix_n}")

    cfg = fit(vocab_size, fix_p=args.fix_p, fix_n=args.fix_n, seed=args.seed)
    save_config(cfg, args.out)
    print(
        f"p={cfg.prime.value} n={cfg.n} capacity={cfg.capacity} "
        f"load_factor={cfg.load_factor:.6f}"
    )
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


def _specs_from_args(args) -> list[ColumnSpec]:
    if not (len(args.column) == len(args.config) == len(args.vocab)):
        raise UsageError(
            f"got {len(args.column)} --column, {len(args.config)} --config, "
            f"{len(args.vocab)} --vocab; counts must match"
        )
    return [
        ColumnSpec(column, config, vocab)
        for column, config, vocab in zip(args.column, args.config, args.vocab)
    ]


def cmd_encode(args) -> int:
    summary = encode_file(args.input, _specs_from_args(args), args.output)
    print(summary)
    return 0


def cmd_decode(args) -> int:
    summary = decode_file(args.input, _specs_from_args(args), args.output)
    print(summary)
    return 0


def _verify_exhaustive(cfg: TokenizerConfig) -> int:
    capacity = cfg.capacity
    seen = np.zeros(capacity, dtype=bool)
    chunk = 1 << 16
    for start in range(0, capacity, chunk):
        ids = range(start, min(start + chunk, capacity))
        tokens = cfg.encode_batch(ids)
        back = cfg.decode_batch(tokens)
        for id_, token, decoded in zip(ids, tokens, back):
            if decoded != id_:
                print(f"VIOLATION id={id_} decoded={decoded}")
                return 1
            token_index = from_digits(token)
            if seen[token_index]:
                print(f"COLLISION token_index={token_index} id={id_}")
                return 1
            seen[token_index] = True
    distinct = int(seen.sum())
    if distinct != capacity:
        print(f"VIOLATION distinct_tokens={distinct} capacity={capacity}")
        return 1
    print(f"VERIFIED bijective over {capacity} ids")
    return 0


def _verify_sampled(cfg: TokenizerConfig, samples: int, seed: int) -> int:
    rng = SplitMix64(seed)
    capacity = cfg.capacity
    remaining = samples
    while remaining > 0:
        count = min(remaining, 1 << 16)
        ids = [rng.next_below(capacity) for _ in range(count)]
        back = cfg.decode_batch(cfg.encode_batch(ids))
        for id_, decoded in zip(ids, back):
            if decoded != id_:
                print(f"VIOLATION id={id_} decoded={decoded}")
                return 1
        remaining -= count
    print(f"VERIFIED bijective over {samples} ids")
    return 0


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    if args.exhaustive:
        if cfg.capacity > EXHAUSTIVE_LIMIT:
            raise UsageError(
                f"refusing exhaustive verification: capacity {cfg.capacity} exceeds "
                f"{EXHAUSTIVE_LIMIT}; use --samples"
            )
        return _verify_exhaustive(cfg)
    if args.samples < 1:
        raise UsageError(f"sample count must be >= 1, got {args.samples}")
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError(f"seed must be in [0, 2**64), got {args.seed}")
    return _verify_sampled(cfg, args.samples, args.seed)


def _time_loop(op, values) -> float:
    start = time.perf_counter()
    for v in values:
        op(v)
    return time.perf_counter() - start


def _scaling_config(p: int, n: int) -> TokenizerConfig:
    prime = FieldPrime(p)
    m = random_invertible(prime, n, seed=0)
    return TokenizerConfig(
        prime=prime,
        n=n,
        seed=0,
        vocab_size=p**n - 1,
        matrix=m,
        matrix_inv=invert(m),
    )


def cmd_bench(args) -> int:
    if args.iterations < 1:
        raise UsageError(f"iteration count must be >= 1, got {args.iterations}")
    cfg = load_config(args.config)
    rng = SplitMix64(0)
    ids = [rng.next_below(cfg.capacity) for _ in range(args.iterations)]
    tokens = [cfg.encode(i) for i in ids]  # warm pass

    enc_s = _time_loop(cfg.encode, ids)
    dec_s = _time_loop(cfg.decode, tokens)
    print(f"encode_ops_per_s={args.iterations / enc_s:.0f}")
    print(f"encode_us_per_op={enc_s / args.iterations * 1e6:.3f}")
    print(f"decode_ops_per_s={args.iterations / dec_s:.0f}")
    print(f"decode_us_per_op={dec_s / args.iterations * 1e6:.3f}")

    # Cost growth in the digit count, at a fixed prime. The matrix-vector
    # product is n**2 scalar multiply-adds, so expect superlinear growth.
    p = cfg.prime.value if cfg.prime.value <= _SCALING_PRIME_CAP else 5
    iters = min(args.iterations, 20000)
    for n in _SCALING_DIGITS:
        scfg = _scaling_config(p, n)
        srng = SplitMix64(1)
        sids = [srng.next_below(scfg.capacity) for _ in range(iters)]
        _time_loop(scfg.encode, sids)  # warm
        elapsed = _time_loop(scfg.encode, sids)
        print(f"scaling p={p} n={n} encode_us_per_op={elapsed / iters * 1e6:.3f}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ModtokError, OverflowError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
