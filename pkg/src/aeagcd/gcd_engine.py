"""Full GCD and extended GCD built on repeated half-reduction.

The fast path (`gcd_aea`) halves large pairs with the windowed sweep until
its size precondition runs out, hands the midrange to a leading-word
simulation in the style of Lehmer, and finishes with the plain remainder
loop, tracking 2x2 matrix rows throughout so Bezout coefficients come out
exactly. The classical algorithms (`euclid_gcd`, `ext_euclid`, `lehmer_gcd`,
`binary_gcd`) are written independently of the fast path so they can serve
as oracles for it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .aea_halfgcd import aea
from .limb_view import LimbBase, bit_length
from .mat2 import Mat2, apply, euclid_step, identity, mul

# word size used by the leading-digit simulation; independent of the limb
# base the half-gcd sweeps on, since the simulation only needs "fits
# comfortably in native integers"
SIM_WORD_BITS = 64

_SWAP = Mat2(0, 1, 1, 0)


@dataclass(frozen=True)
class GcdOutcome:
    """Result of one gcd computation.

    g is the nonnegative gcd. bezout, when present, holds (x, y) with
    x*u + y*v == g for the original argument order. algorithm names the
    code path ("aea", "euclid", "lehmer", "binary"). stats counts division
    (or reduction) steps, half-gcd rounds, and wall time in nanoseconds.
    """

    g: int
    bezout: Optional[tuple[int, int]]
    algorithm: str
    stats: dict


def _check_nonneg(u: int, v: int) -> None:
    if u < 0 or v < 0:
        raise ValueError("gcd arguments must be nonnegative")


def verify_transform(m: Mat2, inputs: tuple[int, int], outputs: tuple[int, int]) -> bool:
    """True iff m maps the input pair to the output pair exactly."""
    return apply(m, inputs) == outputs


def euclid_gcd(u: int, v: int) -> GcdOutcome:
    """Plain remainder-loop gcd; the primary oracle for everything else."""
    _check_nonneg(u, v)
    t0 = time.perf_counter_ns()
    a, b = (u, v) if u >= v else (v, u)
    steps = 0
    while b:
        a, b = b, a % b
        steps += 1
    stats = {"divisions": steps, "hgcd_rounds": 0, "wall_ns": time.perf_counter_ns() - t0}
    return GcdOutcome(g=a, bezout=None, algorithm="euclid", stats=stats)


def ext_euclid(u: int, v: int) -> GcdOutcome:
    """Remainder loop with coefficient rows; returns Bezout coefficients."""
    _check_nonneg(u, v)
    t0 = time.perf_counter_ns()
    r0, r1 = u, v
    x0, y0, x1, y1 = 1, 0, 0, 1
    steps = 0
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
        steps += 1
    assert x0 * u + y0 * v == r0
    stats = {"divisions": steps, "hgcd_rounds": 0, "wall_ns": time.perf_counter_ns() - t0}
    return GcdOutcome(g=r0, bezout=(x0, y0), algorithm="euclid", stats=stats)


def _lehmer_pass(a: int, b: int) -> tuple[int, int, Mat2, int]:
    """One leading-word simulation round on a >= b > 0.

    Simulates the quotient sequence on the top SIM_WORD_BITS of the pair,
    accepting a quotient only when the two bracketing single-word chains
    agree on it, and folds the accepted steps into one matrix applied to the
    full pair. When not even the first quotient is certain, falls back to a
    single full-precision division. Returns (a', b', m, steps) with
    (a', b') == m applied to (a, b), a' > b' >= 0.
    """
    sh = bit_length(a) - SIM_WORD_BITS
    if sh < 0:
        sh = 0
    x, y = a >> sh, b >> sh
    ma, mb, mc, md = 1, 0, 0, 1
    steps = 0
    while y + mc != 0 and y + md != 0:
        q = (x + ma) // (y + mc)
        if q != (x + mb) // (y + md):
            break
        ma, mc = mc, ma - q * mc
        mb, md = md, mb - q * md
        x, y = y, x - q * y
        steps += 1
    if mb == 0:
        q, r = divmod(a, b)
        return b, r, euclid_step(q), 1
    return ma * a + mb * b, mc * a + md * b, Mat2(ma, mb, mc, md), steps


def lehmer_gcd(u: int, v: int) -> GcdOutcome:
    """Leading-word quotient simulation with full-precision fallback."""
    _check_nonneg(u, v)
    t0 = time.perf_counter_ns()
    a, b = (u, v) if u >= v else (v, u)
    steps = 0
    while b and bit_length(b) > SIM_WORD_BITS:
        a, b, _, n = _lehmer_pass(a, b)
        assert a > b >= 0
        steps += n
    while b:
        a, b = b, a % b
        steps += 1
    stats = {"divisions": steps, "hgcd_rounds": 0, "wall_ns": time.perf_counter_ns() - t0}
    return GcdOutcome(g=a, bezout=None, algorithm="lehmer", stats=stats)


def binary_gcd(u: int, v: int) -> GcdOutcome:
    """Stein's shift-and-subtract gcd; division-free oracle."""
    _check_nonneg(u, v)
    t0 = time.perf_counter_ns()
    steps = 0
    if u == 0 or v == 0:
        g = u | v
    else:
        common = ((u | v) & -(u | v)).bit_length() - 1
        a = u >> ((u & -u).bit_length() - 1)
        b = v
        while b:
            b >>= (b & -b).bit_length() - 1
            if a > b:
                a, b = b, a
            b -= a
            steps += 1
        g = a << common
    stats = {"divisions": steps, "hgcd_rounds": 0, "wall_ns": time.perf_counter_ns() - t0}
    return GcdOutcome(g=g, bezout=None, algorithm="binary", stats=stats)


def gcd_aea(u: int, v: int, base: Optional[LimbBase] = None) -> GcdOutcome:
    """Gcd with Bezout coefficients via repeated windowed half-reduction.

    Large balanced pairs go through the half-gcd sweep (each round roughly
    halves the larger operand); once the pair drops below 8 effective words,
    or becomes too lopsided for a half-reduction to certify progress, the
    leading-word simulation takes over, and below two simulation words the
    plain extended remainder loop finishes. The cumulative matrix of every
    phase yields Bezout coefficients, verified exactly before returning.
    """
    _check_nonneg(u, v)
    t0 = time.perf_counter_ns()
    if base is None:
        base = LimbBase.binary(64)
    w = base.effective_word_bits()
    a, b = u, v
    m = identity()
    if a < b:
        a, b = b, a
        m = _SWAP
    rounds = 0
    steps = 0
    while b:
        la, lb = bit_length(a), bit_length(b)
        if la >= 8 * w and lb > (la + 1) // 2 + 1:
            res = aea(a, b, base)
            a, b = res.reduced
            m = mul(res.matrix, m)
            if a < b:
                a, b = b, a
                m = mul(_SWAP, m)
            rounds += 1
            steps += res.stats["divisions"]
            continue
        if la >= 2 * SIM_WORD_BITS and lb > SIM_WORD_BITS:
            a, b, pm, n = _lehmer_pass(a, b)
            m = mul(pm, m)
            steps += n
            continue
        break
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
        steps += 1
    bez = (x0 * m.a + y0 * m.c, x0 * m.b + y0 * m.d)
    assert bez[0] * u + bez[1] * v == a
    stats = {"divisions": steps, "hgcd_rounds": rounds, "wall_ns": time.perf_counter_ns() - t0}
    return GcdOutcome(g=a, bezout=bez, algorithm="aea", stats=stats)
