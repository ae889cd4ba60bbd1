"""Acceptance gate: one test per shipping criterion, each printing a
single PASS/FAIL line (visible with pytest -s) and asserting it."""

import math
import random
import time

from aeagcd.aea_halfgcd import aea, merge_cuts
from aeagcd.gcd_engine import binary_gcd, euclid_gcd, gcd_aea, lehmer_gcd
from aeagcd.ile import ile, stop_threshold
from aeagcd.limb_view import LimbBase, bit_length
from aeagcd.mat2 import Mat2, apply, det, first_col_max
import aeagcd.cli as cli

B20 = LimbBase.binary(20)
B64 = LimbBase.binary(64)
D6 = LimbBase.decimal(6)


def _verdict(num: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def fib(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def test_criterion_1_binary_golden_replay():
    u, v = 922375420941, 707599307587
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        res = aea(u, v, B20)
        best = min(best, time.perf_counter() - t0)
    calls = [e.matrix for e in res.trace if e.kind == "ile_call"]
    ok = (
        calls == [Mat2(369, -481, -425, 554), Mat2(-41, 112, 231, -631)]
        and res.matrix == Mat2(-62729, 81769, 353414, -460685)
        and res.reduced == (1873414, 725479)
        and best < 1e-3
    )
    _verdict(1, ok, f"window matrices, product, reduced pair exact; {best * 1e3:.3f} ms")


def test_criterion_2_decimal_golden_replay():
    u, v = 956722026041, 591286729879
    assert (u, v) == (fib(59), fib(58))

    first = ile(956722, 591286)
    second = ile(1836311, 1134903)
    full = aea(u, v, D6)
    partial = aea(u, v, D6, squeeze_pass=False)
    calls = [e.matrix for e in full.trace if e.kind == "ile_call"]
    merges = [e.matrix for e in full.trace if e.kind == "merge"]
    ok = (
        first.matrix == Mat2(-144, 233, 233, -377)
        and first.remainders == (1670, 1404)
        and second.matrix == Mat2(233, -377, -377, 610)
        and second.remainders == (2032, 1583)
        and calls == [first.matrix, second.matrix]
        and merges == [Mat2(-121393, 196418, 196418, -317811)]
        and partial.matrix == Mat2(-121393, 196418, 196418, -317811)
        and partial.reduced == (2178309, 1346269) == (fib(32), fib(31))
        and full.matrix == Mat2(196418, -317811, -317811, 514229)
        and full.reduced == (1346269, 832040) == (fib(31), fib(30))
    )
    _verdict(2, ok, "both windows, merged matrix, intermediate and squeezed pair exact")


def test_criterion_3_oracle_equivalence():
    rng = random.Random(20260301)
    t0 = time.perf_counter()
    checked = 0
    disagree = 0
    for bits in (64, 256, 1024, 4096):
        for _ in range(2500):
            u = rng.getrandbits(bits) | (1 << (bits - 1))
            v = rng.getrandbits(rng.randrange(1, bits + 1))
            g = euclid_gcd(u, v).g
            if gcd_aea(u, v).g != g or lehmer_gcd(u, v).g != g or binary_gcd(u, v).g != g:
                disagree += 1
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = checked >= 10000 and disagree == 0 and elapsed < 300
    _verdict(3, ok, f"{checked} pairs, {disagree} disagreements, {elapsed:.1f}s")


def test_criterion_4_transform_and_determinant():
    rng = random.Random(20260302)
    violations = 0
    runs = 0
    for _ in range(400):
        bits = rng.randrange(64, 1200)
        u = rng.getrandbits(bits) | (1 << (bits - 1))
        v = rng.randrange(u + 1)
        res = aea(u, v, B64)
        runs += 1
        if apply(res.matrix, (u, v)) != res.reduced or abs(det(res.matrix)) != 1:
            violations += 1
    ok = violations == 0
    _verdict(4, ok, f"{runs} half-gcd invocations, {violations} violations")


def test_criterion_5_size_contracts():
    rng = random.Random(20260303)
    bad = 0
    for _ in range(4000):
        nb = rng.randrange(4, 65)
        u0 = rng.getrandbits(nb) | (1 << (nb - 1))
        u1 = rng.randrange(u0 + 1)
        res = ile(u0, u1)
        n, p = u0.bit_length(), u1.bit_length()
        if p < (n + 1) // 2 + 1:
            continue
        m = stop_threshold(n, p)
        # exact prefix of the division chain, checked step by step
        a, b = u0, u1
        rows = [(1, 0), (0, 1)]
        for _ in range(res.steps):
            q = a // b
            a, b = b, a - q * b
            rows.append((rows[-2][0] - q * rows[-1][0], rows[-2][1] - q * rows[-1][1]))
        if (a, b) != res.remainders:
            bad += 1
            continue
        if res.matrix != Mat2(rows[-2][0], rows[-2][1], rows[-1][0], rows[-1][1]):
            bad += 1
            continue
        if first_col_max(res.matrix) > 1 << m:
            bad += 1
            continue
        if res.remainders[1].bit_length() > (n + 1) // 2 + 1:
            bad += 1

    w = B64.effective_word_bits()
    aea_bad = 0
    for _ in range(150):
        bits = rng.randrange(8 * w, 8 * w + 2048)
        u = rng.getrandbits(bits) | (1 << (bits - 1))
        v = rng.randrange(u + 1)
        res = aea(u, v, B64)
        n = bit_length(u)
        s = (n // w).bit_length() - 1
        if res.reduced[1] and bit_length(res.reduced[1]) > n - (1 << (s - 1)) * w:
            aea_bad += 1
    ok = bad == 0 and aea_bad == 0
    _verdict(5, ok, f"ile oracle contracts {4000 - bad}/4000, sweep size contract {150 - aea_bad}/150")


def test_criterion_6_prefix_progress():
    rng = random.Random(20260304)
    violations = 0
    cuts_seen = 0
    for _ in range(100):
        u = rng.getrandbits(2048) | (1 << 2047)
        v = rng.getrandbits(2047) | (1 << 2046)
        res = aea(u, v, B64)
        prev = bit_length(v)
        for _, lv in merge_cuts(res.trace, (u, v)):
            cuts_seen += 1
            if lv >= prev:
                violations += 1
            prev = lv
    ok = violations == 0 and cuts_seen > 0
    _verdict(6, ok, f"100 pairs of 2048 bits, {cuts_seen} merge cuts, {violations} violations")


def test_criterion_7_adversarial_suite():
    bad = 0
    base = LimbBase.binary(4)
    for k in range(10, 91):
        u, v = fib(k), fib(k - 1)
        if gcd_aea(u, v).g != 1:
            bad += 1
        res = aea(u, v, base)
        if apply(res.matrix, (u, v)) != res.reduced or abs(det(res.matrix)) != 1:
            bad += 1

    rng = random.Random(20260305)
    for _ in range(60):
        v = rng.getrandbits(300) | (1 << 299)
        u = v * rng.randrange(1, 1 << 60)
        if gcd_aea(u, v).g != v:
            bad += 1
        res = aea(u, v, B64)
        if apply(res.matrix, (u, v)) != res.reduced or math.gcd(*res.reduced) != v:
            bad += 1

    for bits in (64, 500, 2000):
        u = rng.getrandbits(bits) | (1 << (bits - 1))
        if gcd_aea(u, u).g != u:
            bad += 1
        res = aea(u, u, B64)
        if apply(res.matrix, (u, u)) != res.reduced:
            bad += 1

    # v far shorter than u: leading V windows are zero, the irregular
    # long-division fallback must fire and stay exact
    for bits, vbits in ((1024, 520), (2048, 1030)):
        u = rng.getrandbits(bits) | (1 << (bits - 1))
        v = rng.getrandbits(vbits) | (1 << (vbits - 1))
        res = aea(u, v, B64)
        if apply(res.matrix, (u, v)) != res.reduced or abs(det(res.matrix)) != 1:
            bad += 1
        if math.gcd(*res.reduced) != math.gcd(u, v):
            bad += 1
        if gcd_aea(u, v).g != math.gcd(u, v):
            bad += 1
    ok = bad == 0
    _verdict(7, ok, f"fibonacci 10..90, multiples, equal pairs, zero-head: {bad} failures")


def test_criterion_8_benchmark_scaling(capsys):
    t0 = time.perf_counter()
    code = cli.run(
        ["bench", "--bits", "8192,16384,32768,65536", "--count", "3", "--algos", "aea,euclid", "--seed", "7"]
    )
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out.splitlines()
    with capsys.disabled():
        rows = [line.split(",") for line in out[1:]]
        med = {(r[0], int(r[1])): int(r[3]) for r in rows}
        ratios = []
        for lo, hi in ((8192, 16384), (16384, 32768), (32768, 65536)):
            ratios.append(med[("aea", hi)] / med[("aea", lo)])
        print(
            "\ncriterion 8 record: aea per-doubling time ratios "
            + ", ".join(f"{r:.2f}" for r in ratios)
            + f"; aea {med[('aea', 65536)] / 1e6:.1f} ms vs euclid {med[('euclid', 65536)] / 1e6:.1f} ms at 65536 bits"
        )
        ok = (
            code == 0
            and med[("aea", 65536)] < med[("euclid", 65536)]
            and elapsed < 600
        )
        _verdict(8, ok, f"doubling ratios recorded, faster than the remainder loop at 2^16, {elapsed:.1f}s")
