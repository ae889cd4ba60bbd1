"""Half-size extended Euclid: run the remainder chain only while the
u-coefficients stay under a bit bound and the remainders stay above the
matching floor, returning the step matrix and the last two remainders.

The plain entry point derives its bound m = p - ceil(n/2) - 1 from the input
bit lengths (n for u0, p for u1); the bounded variant takes the bound
directly, which is what the window sweep and the final squeeze use.
"""

from __future__ import annotations

from dataclasses import dataclass

from .limb_view import bit_length
from .mat2 import Mat2, identity


@dataclass(frozen=True)
class IleResult:
    matrix: Mat2
    remainders: tuple[int, int]
    steps: int


def stop_threshold(n: int, p: int) -> int:
    """Coefficient bound exponent m = p - ceil(n/2) - 1 (may be negative)."""
    if not n >= p >= 0:
        raise ValueError("expected bit counts n >= p >= 0")
    return p - (n + 1) // 2 - 1


def _run(u0: int, u1: int, m: int) -> IleResult:
    # Invariant: (a_prev, b_prev) and (a_cur, b_cur) are the coefficient rows
    # of u and v, so a*u0 + b*u1 reproduces each remainder exactly. The stop
    # rule is evaluated before committing a step and has two parts. First,
    # never commit a row whose u-coefficient exceeds 2**m; since |a| of the
    # next row is at most u1 divided by the current remainder, stopping past
    # that cap pins the final remainder under 2**(p - m). Second, once the
    # chain has come down near the target scale (current remainder below
    # 2**(m + 2)), do not step below the floor 2**m: the reduced pair should
    # sit just above the floor, not at the bottom of a lucky huge quotient.
    # The proximity gate keeps the floor from firing high up the chain when
    # one giant quotient jumps straight past the target band, so a floor
    # stop always returns a remainder shorter than m + 2 bits.
    u, v = u0, u1
    a_prev, b_prev = 1, 0
    a_cur, b_cur = 0, 1
    bound = 1 << m
    steps = 0
    while v:
        q, r = divmod(u, v)
        a_next = a_prev - q * a_cur
        if abs(a_next) > bound:
            break
        if r < bound and v < bound << 2:
            break
        b_next = b_prev - q * b_cur
        u, v = v, r
        a_prev, b_prev, a_cur, b_cur = a_cur, b_cur, a_next, b_next
        steps += 1
    return IleResult(Mat2(a_prev, b_prev, a_cur, b_cur), (u, v), steps)


def ile(u0: int, u1: int) -> IleResult:
    """Half-reduce (u0, u1): run Euclid between the 2**m rails.

    The chain stops on the last row whose u-coefficient fits 2**m, or one
    row earlier when the next remainder would dip under 2**m while the
    current one is already near that scale. Returns identity with zero
    steps when u1 is below the half-size guard. Either way the final
    smaller remainder r satisfies bit_length(r) <= ceil(bit_length(u0)/2) + 1.
    """
    if u0 < 0 or u1 < 0 or u1 > u0:
        raise ValueError("ile expects u0 >= u1 >= 0")
    n = bit_length(u0)
    p = bit_length(u1)
    if p < (n + 1) // 2 + 1:
        return IleResult(identity(), (u0, u1), 0)
    return _run(u0, u1, stop_threshold(n, p))


def ile_bounded(u0: int, u1: int, mmax: int) -> IleResult:
    """As `ile` but with the caller's coefficient bound 2**mmax."""
    if u0 < 0 or u1 < 0 or u1 > u0:
        raise ValueError("ile_bounded expects u0 >= u1 >= 0")
    if mmax < 0:
        raise ValueError("mmax must be nonnegative")
    n = bit_length(u0)
    p = bit_length(u1)
    if p < (n + 1) // 2 + 1:
        return IleResult(identity(), (u0, u1), 0)
    return _run(u0, u1, mmax)
