"""Iterative half-GCD: sweep half-limb windows most-significant-first.

The driver walks a grid of half-limb units (sigma = width // 2 bits or
digits per unit), runs the bounded extended-Euclid primitive on each window,
and folds the resulting matrices into a binary-carry ladder of L/R slots.
Only twice the consumed prefix is kept current: after step i, every unit up
to index 2*i+1 has been transformed through the first i step matrices,
while deeper units are not touched at all. What those ignored units still
owe a window view weighs less than one integer at the view's scale, so
every window equals the true transformed pair's leading digits to within
one unit. The kept-current block (the zone) is held as one signed value
pair, so a base step ages the whole block with four integer products and
carries or sign spill need no per-unit bookkeeping. Ladder merges land on
an already-current block and act instead as retained aligned segments,
through which units entering the zone later (and the final flush) are
caught up with logarithmically many products.

A window that cannot commit a step (the view too lopsided for the half-size
guard, typically just after a jump in the quotient chain) absorbs its unit
unchanged and the sweep moves on; the view rebalances within a few
positions. Head, zone, and untouched tail always sum positionally to the
exact transformed pair; the final transform is flushed from that exact
state and certified against the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .limb_view import BINARY, LimbBase, LimbPair, bit_length
from .mat2 import (
    IDENTITY,
    NEGATE_U,
    NEGATE_V,
    SWAP,
    Mat2,
    apply,
    entry_max,
    euclid_step,
    identity,
    mul,
)
from .ile import IleResult, ile_bounded

EVENT_KINDS = ("ile_call", "merge", "update", "fix", "irregular", "squeeze", "sign_flip")

# Event kinds whose matrices compose (left-multiplied in order) to the final
# transform; the others are derived bookkeeping.
FOLD_KINDS = frozenset({"ile_call", "irregular", "squeeze", "sign_flip"})


@dataclass(frozen=True)
class TraceEvent:
    step: int
    kind: str
    level: Optional[int] = None
    matrix: Optional[Mat2] = None
    window: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class HalfGcdResult:
    matrix: Mat2
    reduced: tuple[int, int]
    trace: tuple[TraceEvent, ...]
    stats: dict


@dataclass
class LadderState:
    """Working state of one sweep epoch over a fixed unit decomposition.

    head is the exact transformed value of the consumed unit prefix, at
    window scale. zone_u/zone_v hold the exact transformed value of units
    [consumed..zone_end] as one signed integer pair: its leading unit is the
    next window digit, and any carry or sign spill lives inside the value
    instead of in per-unit fixups, so one matrix product ages the whole
    block. units_u/units_v keep the original, untransformed decomposition
    and are read once as each unit enters the zone. segments retains every
    base-step matrix and every ladder merge, keyed by half-open step
    intervals, to catch up entering units and the final flush.
    """

    base: LimbBase
    sigma: int
    half: int
    total_units: int
    units_u: list[int]
    units_v: list[int]
    head: tuple[int, int]
    zone_u: int
    zone_v: int
    zone_end: int
    consumed: int
    step: int
    s: int
    L: list[Optional[Mat2]]
    R: list[Optional[Mat2]]
    segments: dict[tuple[int, int], Mat2]
    trace: list[TraceEvent]
    pair: LimbPair
    # matrix the caller still has to merge into its cumulative transform
    # (set by handle_irregular on the fresh state it returns)
    fold: Mat2 = IDENTITY
    # (read position, zone value below the window) cached by materialize
    # so the commit can drop the consumed units without recomputing
    window_rest: Optional[tuple[int, int, int]] = None
    # product of every pushed step matrix this epoch: the one-apply catch-up
    # for units entering the zone and for the flush
    cum_fold: Mat2 = IDENTITY

    @property
    def watermark(self) -> list[int]:
        """Per-unit update age: units through zone_end are current through
        `step`, deeper units have not been touched yet."""
        t = self.total_units
        top = min(self.zone_end, t - 1)
        return [self.step] * (top + 1) + [0] * (t - 1 - top)


def _floor_log2_ratio(n: int, w: int) -> int:
    # floor(log2(n / w)) for n >= w >= 1, exact in integers
    return (n // w).bit_length() - 1


def _sigma_units(x: int, half: int) -> list[int]:
    if x == 0:
        return [0]
    if half & (half - 1) == 0:
        sigma = half.bit_length() - 1
        count = (x.bit_length() + sigma - 1) // sigma
        if sigma % 8 == 0:
            # byte-aligned power of two: slice the big-endian byte string
            # instead of looping big divisions, keeping the split linear
            nbytes = sigma // 8
            buf = x.to_bytes(count * nbytes, "big")
            return [
                int.from_bytes(buf[j : j + nbytes], "big")
                for j in range(0, count * nbytes, nbytes)
            ]
        mask = half - 1
        return [(x >> (sigma * (count - 1 - k))) & mask for k in range(count)]
    out = []
    while x > 0:
        x, r = divmod(x, half)
        out.append(r)
    out.reverse()
    return out


def make_state(u: int, v: int, base: LimbBase, trace: Optional[list[TraceEvent]] = None) -> LadderState:
    """Fresh sweep state over the half-limb grid of (u, v)."""
    if base.width < 2:
        raise ValueError("window sweep needs limb width >= 2")
    sigma = base.width // 2
    half = (1 << sigma) if base.kind == BINARY else 10 ** sigma
    uu = _sigma_units(u, half)
    vv = _sigma_units(v, half)
    t = max(len(uu), len(vv))
    uu = [0] * (t - len(uu)) + uu
    vv = [0] * (t - len(vv)) + vv
    w_eff = base.effective_word_bits()
    n = bit_length(u)
    s = _floor_log2_ratio(n, w_eff) if n >= w_eff else 0
    return LadderState(
        base=base,
        sigma=sigma,
        half=half,
        total_units=t,
        units_u=uu,
        units_v=vv,
        head=(0, 0),
        zone_u=0,
        zone_v=0,
        zone_end=-1,
        consumed=0,
        step=0,
        s=s,
        L=[None] * (s + 8),
        R=[None] * (s + 8),
        segments={},
        trace=trace if trace is not None else [],
        pair=LimbPair.from_values(u, v, base),
    )


def _pieces(lo: int, hi: int) -> list[tuple[int, int]]:
    # aligned dyadic decomposition of the half-open step interval (lo, hi]
    out = []
    w = lo
    while w < hi:
        size = w & -w if w else 1 << (hi.bit_length() - 1)
        while size > hi - w:
            size >>= 1
        out.append((w, w + size))
        w += size
    return out


def _piece_matrix(state: LadderState, lo: int, hi: int) -> Mat2:
    # aligned dyadic piece: stored directly, or composed from its halves
    # (a merge not yet formed at this step; base pieces always exist)
    seg = state.segments.get((lo, hi))
    if seg is not None:
        return seg
    mid = (lo + hi) // 2
    return mul(_piece_matrix(state, mid, hi), _piece_matrix(state, lo, mid))


def _gap_matrix(state: LadderState, lo: int, hi: int) -> Mat2:
    m = IDENTITY
    for piece in _pieces(lo, hi):
        m = mul(_piece_matrix(state, *piece), m)
    return m


def _advance_value(
    state: LadderState, val: tuple[int, int], lo: int, hi: int
) -> tuple[int, int]:
    for piece in _pieces(lo, hi):
        val = apply(_piece_matrix(state, *piece), val)
    return val


def _scale_up(state: LadderState, x: int, n: int) -> int:
    # x * half**n, with a shift on the binary grid
    if n <= 0:
        return x
    if state.base.kind == BINARY:
        return x << (n * state.sigma)
    return x * state.half ** n


def _extend_zone(state: LadderState, upto: int) -> None:
    # Pull original units (zone_end, upto] into the zone: advance them
    # through every committed step with one cumulative product, then append
    # below the current zone value.
    hi = min(upto, state.total_units - 1)
    lo = state.zone_end + 1
    if hi < lo:
        return
    vu = vv = 0
    for k in range(lo, hi + 1):
        vu = vu * state.half + state.units_u[k]
        vv = vv * state.half + state.units_v[k]
    if state.step > 0:
        vu, vv = apply(state.cum_fold, (vu, vv))
        state.trace.append(TraceEvent(step=state.step, kind="fix", window=(lo, hi)))
    n = hi - lo + 1
    state.zone_u = _scale_up(state, state.zone_u, n) + vu
    state.zone_v = _scale_up(state, state.zone_v, n) + vv
    state.zone_end = hi


def materialize(state: LadderState, i: int) -> tuple[int, int]:
    """Window view for base step i: head plus units up to index i.

    Extends the zone first, so every unit up to twice the read position
    (plus one guard unit) is transformed through step `state.step`: what the
    deeper, untouched units still owe the view weighs less than one integer
    at the view's scale, so the window equals the true transformed pair's
    leading digits to within one unit. The zone value below the window is
    cached on the state for the commit to drop consumed units cheaply.
    """
    _extend_zone(state, 2 * i + 1)
    rest = state.zone_end - i
    if rest <= 0:
        zl = state.zone_end - state.consumed + 1
        state.window_rest = (i, 0, 0)
        return (
            _scale_up(state, state.head[0], zl) + state.zone_u,
            _scale_up(state, state.head[1], zl) + state.zone_v,
        )
    if state.base.kind == BINARY:
        bits = rest * state.sigma
        hu, hv = state.zone_u >> bits, state.zone_v >> bits
        lu = state.zone_u - (hu << bits)
        lv = state.zone_v - (hv << bits)
    else:
        scale = state.half ** rest
        hu, lu = divmod(state.zone_u, scale)
        hv, lv = divmod(state.zone_v, scale)
    state.window_rest = (i, lu, lv)
    wlen = i - state.consumed + 1
    return _scale_up(state, state.head[0], wlen) + hu, _scale_up(state, state.head[1], wlen) + hv


def _commit_window(state: LadderState, i: int, head: tuple[int, int]) -> None:
    # Consume the window at read position i: its reduced remainders become
    # the head, and the zone keeps only the units below the window (their
    # transform is the caller's next _push_ladder).
    cached = state.window_rest
    assert cached is not None and cached[0] == i, "commit without a matching window read"
    state.head = head
    state.zone_u, state.zone_v = cached[1], cached[2]
    state.consumed = i + 1
    state.step = i
    state.window_rest = None


def flush(state: LadderState) -> tuple[int, int]:
    """Exact transformed pair: head, zone, and untouched tail positionally
    summed, the tail caught up with the epoch's cumulative product."""
    zl = state.zone_end - state.consumed + 1
    xu = _scale_up(state, state.head[0], zl) + (state.zone_u if zl > 0 else 0)
    xv = _scale_up(state, state.head[1], zl) + (state.zone_v if zl > 0 else 0)
    t = state.total_units
    lo = state.zone_end + 1
    if lo < t:
        vu = vv = 0
        for k in range(lo, t):
            vu = vu * state.half + state.units_u[k]
            vv = vv * state.half + state.units_v[k]
        if state.step > 0:
            vu, vv = apply(state.cum_fold, (vu, vv))
        xu = _scale_up(state, xu, t - lo) + vu
        xv = _scale_up(state, xv, t - lo) + vv
    return xu, xv


def canonical_view(state: LadderState) -> tuple[tuple[int, int], list[tuple[int, int]]]:
    """Diagnostic re-split of head and zone into canonical units.

    Returns (head with any zone spill folded in, zone units as (u, v)
    pairs). This is the normalized form the worked replays print after
    their fix steps; the sweep itself never needs it.
    """
    zl = state.zone_end - state.consumed + 1
    units: list[tuple[int, int]] = []
    zu, zv = state.zone_u, state.zone_v
    for _ in range(max(zl, 0)):
        zu, ru = divmod(zu, state.half)
        zv, rv = divmod(zv, state.half)
        units.append((ru, rv))
    units.reverse()
    return (state.head[0] + zu, state.head[1] + zv), units


def _push_ladder(state: LadderState, i: int, m: Mat2) -> None:
    state.segments[(i - 1, i)] = m
    update_window(state, 0, m, i)
    state.cum_fold = mul(m, state.cum_fold)
    if i % 2 == 1:
        state.L[0] = m
        return
    state.R[0] = m
    x = i // 2
    h = 1
    while x % 2 == 0:
        merged = mul(state.R[h - 1], state.L[h - 1])
        state.R[h] = merged
        state.segments[(i - (1 << h), i)] = merged
        if merged != IDENTITY:
            state.trace.append(TraceEvent(step=i, kind="merge", level=h, matrix=merged))
        update_window(state, h, merged, i)
        x //= 2
        h += 1
    merged = mul(state.R[h - 1], state.L[h - 1])
    if h >= len(state.L):
        state.L.extend([None] * h)
        state.R.extend([None] * h)
    state.L[h] = merged
    state.segments[(i - (1 << h), i)] = merged
    if merged != IDENTITY:
        state.trace.append(TraceEvent(step=i, kind="merge", level=h, matrix=merged))
    update_window(state, h, merged, i)


def update_window(state: LadderState, h: int, m: Mat2, anchor: int) -> LadderState:
    """Apply a newly formed level-h matrix to the block beyond the prefix.

    The block is the double of the chopped prefix: units anchor+1 through
    2*anchor, plus one guard unit, truncated at the tail; everything still
    owed to units beyond it weighs less than one integer at the window's
    scale, which is what makes the window views trustworthy. The block
    arrives here already aged through the steps before `anchor`, so the base
    step matrix transforms the whole zone with four products, and a ladder
    merge (h >= 1) finds its work already done and falls through, serving
    instead as the retained segment that batches catch-ups for units
    entering the zone later. An update that leaves the block value wider
    than its unit span is noted as a fix event: the spill is the head carry
    the next window read absorbs.
    """
    if h > 0 or m == IDENTITY:
        return state
    lo = state.consumed
    if lo >= state.total_units or state.zone_end < lo:
        return state
    state.zone_u, state.zone_v = apply(m, (state.zone_u, state.zone_v))
    state.trace.append(
        TraceEvent(step=anchor, kind="update", level=h, matrix=m, window=(lo, state.zone_end))
    )
    if state.base.kind == BINARY:
        span_bits = (state.zone_end - lo + 1) * state.sigma
        spilled = state.zone_u.bit_length() > span_bits or state.zone_v.bit_length() > span_bits
    else:
        span = state.half ** (state.zone_end - lo + 1)
        spilled = abs(state.zone_u) >= span or abs(state.zone_v) >= span
    if spilled:
        state.trace.append(TraceEvent(step=anchor, kind="fix", window=(lo, state.zone_end)))
    return state


def _window_flips(wu: int, wv: int) -> tuple[int, int, list[Mat2]]:
    # make the pair nonnegative and ordered for the Euclid primitive; the
    # flip factors become part of the committed step matrix (or are folded
    # on the exact values at the end), never applied speculatively
    flips: list[Mat2] = []
    if wu < 0:
        wu = -wu
        flips.append(NEGATE_U)
    if wv < 0:
        wv = -wv
        flips.append(NEGATE_V)
    if wu < wv:
        wu, wv = wv, wu
        flips.append(SWAP)
    return wu, wv, flips


def _fold_flips(flips: list[Mat2]) -> Mat2:
    acc = IDENTITY
    for f in flips:
        acc = mul(f, acc)
    return acc


def _normalize_exact(
    trace: list[TraceEvent], step: int, u: int, v: int, cum: Mat2
) -> tuple[int, int, Mat2]:
    u, v, flips = _window_flips(u, v)
    for f in flips:
        trace.append(TraceEvent(step=step, kind="sign_flip", matrix=f))
        cum = mul(f, cum)
    return u, v, cum


def _scaled_bits(state: LadderState, value: int, exp: int) -> int:
    # exact bit length of value * half**exp
    if value == 0:
        return 0
    if state.base.kind == BINARY:
        return bit_length(value) + exp * state.sigma
    return bit_length(value * state.half ** exp)


def squeeze(
    m: Mat2,
    pair: tuple[int, int],
    mmax: int,
    trace: Optional[list[TraceEvent]] = None,
) -> tuple[Mat2, tuple[int, int], int]:
    """Fold extra single Euclid steps while every entry of the extended
    matrix stays within 2**mmax. Returns (matrix, pair, steps_taken)."""
    u, v = pair
    bound = (1 << mmax) if mmax >= 0 else 0
    steps = 0
    while v > 0:
        q = u // v
        candidate = mul(euclid_step(q), m)
        if entry_max(candidate) > bound:
            break
        m = candidate
        u, v = v, u - q * v
        if trace is not None:
            trace.append(TraceEvent(step=0, kind="squeeze", matrix=euclid_step(q)))
        steps += 1
    return m, (u, v), steps


def handle_irregular(state: LadderState, i: int) -> LadderState:
    """Fallback for a dead window (zero V view or a zero-step reduction).

    Materializes the exact pair via a full update, normalizes its signs,
    performs one long Euclidean division, and returns a fresh sweep state
    over the re-decomposed remainder pair, ready to resume. The matrix
    folding the division (and any sign fixes) is left in the returned
    state's `fold` field for the caller's cumulative transform. When V is
    zero globally no division happens and the state holds (U, 0).
    """
    eu, ev = flush(state)
    eu, ev, flips = _window_flips(eu, ev)
    fold = _fold_flips(flips)
    for f in flips:
        state.trace.append(TraceEvent(step=i, kind="sign_flip", matrix=f))
    if ev:
        q, r = divmod(eu, ev)
        step = euclid_step(q)
        fold = mul(step, fold)
        state.trace.append(TraceEvent(step=i, kind="irregular", matrix=step))
        eu, ev = ev, r
    fresh = make_state(eu, ev, state.base, state.trace)
    fresh.fold = fold
    return fresh


def aea(
    u: int,
    v: int,
    base: LimbBase,
    squeeze_pass: bool = True,
) -> HalfGcdResult:
    """Half-reduce (u, v): returns the transform matrix, the reduced pair,
    and the ordered trace of sweep events.

    Designed for bit_length(u) >= 8 * word bits; smaller inputs (such as the
    worked replays) are accepted and handled exactly, just without the
    performance rationale. Requires u >= v >= 0 and limb width >= 2.
    The result always satisfies apply(matrix, (u, v)) == reduced (checked
    before returning) and gcd(reduced) == gcd(u, v).
    """
    if u < 0 or v < 0 or v > u:
        raise ValueError("aea expects u >= v >= 0")
    if base.width < 2:
        raise ValueError("window sweep needs limb width >= 2")
    n0 = bit_length(u)
    half_target = (n0 + 1) // 2 + 1
    trace: list[TraceEvent] = []
    stats = {"ile_calls": 0, "irregular": 0, "squeeze_steps": 0, "divisions": 0, "epochs": 0}
    if v == 0 or bit_length(v) <= half_target:
        return HalfGcdResult(identity(), (u, v), tuple(trace), stats)

    w_eff = base.effective_word_bits()
    mmax = bit_length(v) - half_target
    cum = identity()
    cur_u, cur_v = u, v
    s_contract = _floor_log2_ratio(n0, w_eff) if n0 >= 2 * w_eff else 0

    while cur_v and bit_length(cur_v) > half_target:
        stats["epochs"] += 1
        prev_pair = (cur_u, cur_v)
        state = make_state(cur_u, cur_v, base, trace)
        t = state.total_units
        if t < 2:
            # too small to window; plain folds still meet the size contract
            while cur_v and bit_length(cur_v) > half_target:
                q, r = divmod(cur_u, cur_v)
                step = euclid_step(q)
                cum = mul(step, cum)
                trace.append(TraceEvent(step=0, kind="irregular", matrix=step))
                stats["divisions"] += 1
                cur_u, cur_v = cur_v, r
            break
        for i in range(1, t):
            wu, wv = materialize(state, i)
            wu, wv, flips = _window_flips(wu, wv)
            budget = _scaled_bits(state, wv, t - 1 - i) - half_target
            if budget <= 0:
                break
            m_eff = min(bit_length(wu) // 2 - 1, budget)
            if m_eff >= 0:
                res = ile_bounded(wu, wv, m_eff)
            else:
                # window too narrow to certify even one step; absorb the
                # unit unchanged and let the next window read one deeper
                res = IleResult(IDENTITY, (wu, wv), 0)
            # A zero-step window (the pair too lopsided for the half-size
            # guard, often right after a quotient jump overshot) commits the
            # identity: the unit folds into the head untouched and the view
            # rebalances within a few positions. The sweep never stops early
            # for shape, only when the size budget runs out.
            for f in flips:
                trace.append(TraceEvent(step=i, kind="sign_flip", matrix=f))
            fold = _fold_flips(flips)
            if res.steps:
                trace.append(
                    TraceEvent(step=i, kind="ile_call", level=0, matrix=res.matrix, window=(i - 1, i))
                )
                fold = mul(res.matrix, fold)
                stats["ile_calls"] += 1
                stats["divisions"] += res.steps
            _commit_window(state, i, res.remainders)
            _push_ladder(state, i, fold)
        eu, ev = flush(state)
        cum = mul(state.cum_fold, cum)
        cur_u, cur_v, cum = _normalize_exact(trace, state.step, eu, ev, cum)
        if (cur_u, cur_v) == prev_pair and cur_v and bit_length(cur_v) > half_target:
            # sweep stalled (every window broke on budget); one long division
            # guarantees strict progress before the next epoch
            q, r = divmod(cur_u, cur_v)
            step = euclid_step(q)
            cum = mul(step, cum)
            trace.append(TraceEvent(step=state.step, kind="irregular", matrix=step))
            stats["irregular"] += 1
            stats["divisions"] += 1
            cur_u, cur_v = cur_v, r

    if squeeze_pass:
        cum, (cur_u, cur_v), n_sq = squeeze(cum, (cur_u, cur_v), mmax, trace)
        stats["squeeze_steps"] += n_sq
        stats["divisions"] += n_sq
        if s_contract >= 1:
            limit = n0 - (1 << (s_contract - 1)) * w_eff
            while cur_v and bit_length(cur_v) > limit:
                q, r = divmod(cur_u, cur_v)
                step = euclid_step(q)
                cum = mul(step, cum)
                trace.append(TraceEvent(step=0, kind="squeeze", matrix=step))
                stats["squeeze_steps"] += 1
                stats["divisions"] += 1
                cur_u, cur_v = cur_v, r

    if apply(cum, (u, v)) != (cur_u, cur_v):
        raise RuntimeError(
            "transform certificate failed: "
            f"apply({cum}, ({u}, {v})) != ({cur_u}, {cur_v})"
        )
    return HalfGcdResult(cum, (cur_u, cur_v), tuple(trace), stats)


def replay_trace(trace) -> Mat2:
    """Left-fold the transform-bearing trace events back into one matrix."""
    acc = identity()
    for ev in trace:
        if ev.kind in FOLD_KINDS and ev.matrix is not None:
            acc = mul(ev.matrix, acc)
    return acc


def merge_cuts(trace, inputs: tuple[int, int]) -> list[tuple[int, int]]:
    """(step, |V| bit length) at each merge cut, for prefix-progress checks.

    A cut is the trace prefix ending at a step that produced merge events;
    several ladder levels merging at one step share a single cut, since the
    prefix matrix is the same for all of them.
    """
    acc = identity()
    out = []
    folds = 0
    last_cut = None
    for ev in trace:
        if ev.kind in FOLD_KINDS and ev.matrix is not None:
            acc = mul(ev.matrix, acc)
            folds += 1
        elif ev.kind == "merge":
            if (folds, ev.step) == last_cut:
                continue
            last_cut = (folds, ev.step)
            _, vv = apply(acc, inputs)
            out.append((ev.step, bit_length(abs(vv))))
    return out
