"""Command-line surface: gcds, half-reduction traces, golden replays, benchmarks.

Commands:
  gcd      print gcd(u, v), optionally with Bezout coefficients
  hgcd     one half-reduction: prints the transform matrix and reduced pair
  trace    same run, but streams every sweep event as one JSON object per line
  bench    seeded deterministic benchmark across algorithms, CSV output
  selftest golden replays plus a reduced randomized oracle suite

Exit codes: 0 ok, 1 selftest failure, 2 usage error, 3 invariant breach.
Integer arguments accept decimal or 0x-prefixed hex. The AEA_DEFAULT_WORD
environment variable overrides the default 64-bit limb width.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .aea_halfgcd import HalfGcdResult, aea
from .gcd_engine import (
    binary_gcd,
    euclid_gcd,
    ext_euclid,
    gcd_aea,
    lehmer_gcd,
    verify_transform,
)
from .limb_view import LimbBase, bit_length
from .mat2 import Mat2, apply, det

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

# worked-example constants replayed by selftest (binary base 2**20 and
# decimal base 10**6); corrupting any of these must make selftest fail
GOLDEN_BINARY_INPUTS = (922375420941, 707599307587)
GOLDEN_BINARY_MATRIX = (-62729, 81769, 353414, -460685)
GOLDEN_BINARY_REDUCED = (1873414, 725479)
GOLDEN_DECIMAL_INPUTS = (956722026041, 591286729879)
GOLDEN_DECIMAL_MATRIX = (196418, -317811, -317811, 514229)
GOLDEN_DECIMAL_REDUCED = (1346269, 832040)

_ALGORITHMS = {
    "aea": lambda u, v: gcd_aea(u, v),
    "euclid": euclid_gcd,
    "lehmer": lehmer_gcd,
    "binary": binary_gcd,
}


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one command, one input source, output options."""

    command: str
    inputs: Optional[tuple[int, int]] = None
    base: Optional[LimbBase] = None
    squeeze: bool = True
    fmt: str = "text"
    bezout: bool = False
    allow_small: bool = False
    seed: int = 0
    bits: tuple[int, ...] = ()
    count: int = 0
    algos: tuple[str, ...] = ()
    trials: int = 200


def _default_base() -> LimbBase:
    raw = os.environ.get("AEA_DEFAULT_WORD", "64")
    try:
        w = int(raw)
    except ValueError:
        raise SystemExit(_usage_error(f"AEA_DEFAULT_WORD is not an integer: {raw!r}"))
    if w < 2:
        raise SystemExit(_usage_error(f"AEA_DEFAULT_WORD must be >= 2, got {w}"))
    return LimbBase.binary(w)


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _parse_int(text: str) -> int:
    t = text.strip().lower()
    value = int(t, 16) if t.startswith("0x") else int(t, 10)
    if value < 0:
        raise ValueError("negative")
    return value


def _parse_base(text: str) -> LimbBase:
    kind, _, width = text.partition(":")
    if not width:
        raise ValueError(f"base must look like binary:W or decimal:d, got {text!r}")
    w = int(width)
    if kind == "binary":
        return LimbBase.binary(w)
    if kind == "decimal":
        return LimbBase.decimal(w)
    raise ValueError(f"unknown base kind {kind!r}")


def _mat_strings(m: Mat2) -> list[str]:
    return [str(m.a), str(m.b), str(m.c), str(m.d)]


def _run_halfgcd(cfg: RunConfig) -> tuple[int, Optional[HalfGcdResult]]:
    u, v = cfg.inputs
    base = cfg.base or _default_base()
    if not cfg.allow_small and bit_length(u) < 8 * base.effective_word_bits():
        return (
            _usage_error(
                f"input has {bit_length(u)} bits, below 8 words of {base.effective_word_bits()} "
                "effective bits; pass --allow-small to run anyway"
            ),
            None,
        )
    try:
        res = aea(u, v, base, squeeze_pass=cfg.squeeze)
    except ValueError as err:
        return _usage_error(str(err)), None
    if not verify_transform(res.matrix, (u, v), res.reduced):
        print(
            "invariant breach: transform does not reproduce the reduced pair\n"
            f"  matrix: {res.matrix}\n  inputs: {(u, v)}\n  reduced: {res.reduced}",
            file=sys.stderr,
        )
        return EXIT_INVARIANT, None
    return EXIT_OK, res


def cmd_gcd(cfg: RunConfig) -> int:
    u, v = cfg.inputs
    out = gcd_aea(u, v, cfg.base or _default_base())
    if cfg.fmt == "json":
        doc = {"g": str(out.g), "bezout": [str(x) for x in out.bezout] if cfg.bezout else None}
        print(json.dumps(doc))
        return EXIT_OK
    print(out.g)
    if cfg.bezout:
        x, y = out.bezout
        print(f"{x} {y}")
    return EXIT_OK


def cmd_hgcd(cfg: RunConfig) -> int:
    code, res = _run_halfgcd(cfg)
    if res is None:
        return code
    if cfg.fmt == "json":
        print(json.dumps({"matrix": _mat_strings(res.matrix), "reduced": [str(x) for x in res.reduced]}))
        return EXIT_OK
    print("matrix:", *_mat_strings(res.matrix))
    print("reduced:", res.reduced[0], res.reduced[1])
    return EXIT_OK


def cmd_trace(cfg: RunConfig) -> int:
    code, res = _run_halfgcd(cfg)
    if res is None:
        return code
    out = sys.stdout
    for ev in res.trace:
        doc = {
            "step": ev.step,
            "kind": ev.kind,
            "level": ev.level,
            "matrix": _mat_strings(ev.matrix) if ev.matrix is not None else None,
            "window": list(ev.window) if ev.window is not None else None,
        }
        out.write(json.dumps(doc) + "\n")
        out.flush()
    summary = {
        "kind": "summary",
        "matrix": _mat_strings(res.matrix),
        "reduced": [str(x) for x in res.reduced],
        "stats": res.stats,
    }
    out.write(json.dumps(summary) + "\n")
    out.flush()
    return EXIT_OK


def _bench_pairs(seed: int, bits: int, count: int) -> list[tuple[int, int]]:
    # regenerated identically for every algorithm and every rerun
    rng = random.Random(seed * 1_000_003 + bits)
    pairs = []
    for _ in range(count):
        u = rng.getrandbits(bits) | (1 << (bits - 1))
        v = rng.getrandbits(bits - 1) | (1 << (bits - 2))
        pairs.append((u, v))
    return pairs


def cmd_bench(cfg: RunConfig) -> int:
    for b in cfg.bits:
        if b < 4:
            return _usage_error(f"bench bit size must be >= 4, got {b}")
    unknown = [a for a in cfg.algos if a not in _ALGORITHMS]
    if unknown:
        return _usage_error(f"unknown algorithms: {', '.join(unknown)}")
    print("algorithm,bits,trials,median_ns,divisions")
    for bits in cfg.bits:
        pairs = _bench_pairs(cfg.seed, bits, cfg.count)
        for name in cfg.algos:
            fn = _ALGORITHMS[name]
            fn(*pairs[0])  # warmup, excluded from timing
            times = []
            divisions = []
            for u, v in pairs:
                t0 = time.perf_counter_ns()
                out = fn(u, v)
                times.append(time.perf_counter_ns() - t0)
                divisions.append(out.stats["divisions"])
            print(
                f"{name},{bits},{len(pairs)},{statistics.median_low(times)},"
                f"{statistics.median_low(divisions)}"
            )
    return EXIT_OK


def _replay_check(inputs, base, matrix, reduced) -> bool:
    res = aea(inputs[0], inputs[1], base)
    return (res.matrix.a, res.matrix.b, res.matrix.c, res.matrix.d) == tuple(matrix) and (
        res.reduced == tuple(reduced)
    )


def _selftest_random(trials: int) -> bool:
    rng = random.Random(20260819)
    for _ in range(trials):
        n = rng.choice([64, 256, 1024])
        u = rng.getrandbits(n)
        v = rng.getrandbits(rng.randrange(1, n + 1))
        want = euclid_gcd(u, v).g
        out = gcd_aea(u, v)
        if out.g != want or lehmer_gcd(u, v).g != want or binary_gcd(u, v).g != want:
            return False
        if out.bezout[0] * u + out.bezout[1] * v != out.g:
            return False
        ex = ext_euclid(u, v)
        if ex.g != want or ex.bezout[0] * u + ex.bezout[1] * v != want:
            return False
    return True


def _selftest_halfgcd(trials: int) -> bool:
    rng = random.Random(20260820)
    base = LimbBase.binary(16)
    for _ in range(trials):
        n = rng.randrange(64, 513)
        u = rng.getrandbits(n) | (1 << (n - 1))
        v = rng.randrange(1, u + 1)
        res = aea(u, v, base)
        if abs(det(res.matrix)) != 1:
            return False
        if not verify_transform(res.matrix, (u, v), res.reduced):
            return False
        if math.gcd(*res.reduced) != math.gcd(u, v):
            return False
    return True


def cmd_selftest(cfg: RunConfig) -> int:
    checks = [
        (
            "binary20-replay",
            lambda: _replay_check(
                GOLDEN_BINARY_INPUTS, LimbBase.binary(20), GOLDEN_BINARY_MATRIX, GOLDEN_BINARY_REDUCED
            ),
        ),
        (
            "decimal6-replay",
            lambda: _replay_check(
                GOLDEN_DECIMAL_INPUTS, LimbBase.decimal(6), GOLDEN_DECIMAL_MATRIX, GOLDEN_DECIMAL_REDUCED
            ),
        ),
        ("random-oracles", lambda: _selftest_random(cfg.trials)),
        ("halfgcd-invariants", lambda: _selftest_halfgcd(max(cfg.trials // 4, 10))),
    ]
    for name, fn in checks:
        if not fn():
            print(f"FAIL {name}")
            return EXIT_SELFTEST
        print(f"ok {name}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aeagcd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pair(p):
        p.add_argument("u", help="first operand (decimal or 0x hex)")
        p.add_argument("v", help="second operand (decimal or 0x hex)")

    p_gcd = sub.add_parser("gcd", help="print gcd(u, v)")
    add_pair(p_gcd)
    p_gcd.add_argument("--bezout", action="store_true", help="also print Bezout coefficients")
    p_gcd.add_argument("--base", help="limb base, binary:W or decimal:d")
    p_gcd.add_argument("--format", choices=("text", "json"), default="text")

    for name, help_text in (("hgcd", "one half-reduction"), ("trace", "half-reduction event stream")):
        p = sub.add_parser(name, help=help_text)
        add_pair(p)
        p.add_argument("--base", help="limb base, binary:W or decimal:d")
        p.add_argument("--no-squeeze", action="store_true", help="skip the tail squeeze pass")
        p.add_argument("--allow-small", action="store_true", help="accept inputs below 8 words")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_bench = sub.add_parser("bench", help="seeded benchmark, CSV output")
    p_bench.add_argument("--seed", type=int, default=42)
    p_bench.add_argument("--bits", default="4096", help="comma-separated input bit sizes")
    p_bench.add_argument("--count", type=int, default=10, help="trials per (algorithm, bits)")
    p_bench.add_argument("--algos", default="aea,euclid,lehmer,binary", help="comma-separated list")
    p_bench.add_argument("--format", choices=("csv",), default="csv")

    p_self = sub.add_parser("selftest", help="golden replays plus randomized oracle suite")
    p_self.add_argument("--trials", type=int, default=200)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    inputs = None
    if hasattr(args, "u"):
        inputs = (_parse_int(args.u), _parse_int(args.v))
    base = None
    if getattr(args, "base", None):
        base = _parse_base(args.base)
    bits = ()
    if hasattr(args, "bits"):
        bits = tuple(int(b) for b in str(args.bits).split(",") if b)
    algos = ()
    if hasattr(args, "algos"):
        algos = tuple(a.strip() for a in args.algos.split(",") if a.strip())
    return RunConfig(
        command=args.command,
        inputs=inputs,
        base=base,
        squeeze=not getattr(args, "no_squeeze", False),
        fmt=getattr(args, "format", "text"),
        bezout=getattr(args, "bezout", False),
        allow_small=getattr(args, "allow_small", False),
        seed=getattr(args, "seed", 0),
        bits=bits,
        count=getattr(args, "count", 0),
        algos=algos,
        trials=getattr(args, "trials", 200),
    )


def run(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ValueError as err:
        return _usage_error(f"bad argument: {err}")
    handlers = {
        "gcd": cmd_gcd,
        "hgcd": cmd_hgcd,
        "trace": cmd_trace,
        "bench": cmd_bench,
        "selftest": cmd_selftest,
    }
    return handlers[cfg.command](cfg)


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
