"""Big integers as most-significant-first limb vectors.

A limb base is either binary (limbs of `width` bits, base B = 2**width) or
decimal (limbs of `width` digits, base B = 10**width). Values are sliced into
MSF-ordered limb lists; paired vectors support window extraction and the
carry renormalization step (`fix`) needed after a matrix has been applied to
a block of limbs and left them signed or overflowing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

BINARY = "binary"
DECIMAL = "decimal"


def bit_length(x: int) -> int:
    """Number of significant bits of x, i.e. ceil(log2(x+1)); 0 for x = 0."""
    if x < 0:
        raise ValueError("bit_length expects a nonnegative integer")
    return x.bit_length()


@dataclass(frozen=True)
class LimbBase:
    """A positional base for slicing integers into limbs."""

    kind: str
    width: int
    value: int = field(default=0)

    def __post_init__(self) -> None:
        if self.kind == BINARY:
            if not 4 <= self.width <= 64:
                raise ValueError("binary limb width must be in [4, 64]")
            object.__setattr__(self, "value", 1 << self.width)
        elif self.kind == DECIMAL:
            if not 1 <= self.width <= 9:
                raise ValueError("decimal limb width must be in [1, 9]")
            object.__setattr__(self, "value", 10 ** self.width)
        else:
            raise ValueError(f"unknown limb base kind: {self.kind!r}")

    @staticmethod
    def binary(width: int) -> "LimbBase":
        return LimbBase(BINARY, width)

    @staticmethod
    def decimal(width: int) -> "LimbBase":
        return LimbBase(DECIMAL, width)

    def effective_word_bits(self) -> int:
        """Bits guaranteed per limb: width for binary, floor(log2 B) for decimal."""
        if self.kind == BINARY:
            return self.width
        return self.value.bit_length() - 1


def decompose(x: int, base: LimbBase) -> list[int]:
    """Split x >= 0 into MSF limbs in [0, B); [0] for x = 0."""
    if x < 0:
        raise ValueError("decompose expects a nonnegative integer")
    if x == 0:
        return [0]
    b = base.value
    if b & (b - 1) == 0 and base.width % 8 == 0:
        # byte-aligned binary limbs: slice the big-endian byte string instead
        # of looping big divisions, keeping the split linear in the input size
        nbytes = base.width // 8
        count = (x.bit_length() + base.width - 1) // base.width
        buf = x.to_bytes(count * nbytes, "big")
        return [
            int.from_bytes(buf[j : j + nbytes], "big")
            for j in range(0, count * nbytes, nbytes)
        ]
    limbs: list[int] = []
    while x > 0:
        x, r = divmod(x, b)
        limbs.append(r)
    limbs.reverse()
    return limbs


def recompose(limbs: list[int] | tuple[int, ...], base: LimbBase) -> int:
    """Positional sum of limbs, MSF order. Accepts signed/overflowing limbs."""
    acc = 0
    b = base.value
    for limb in limbs:
        acc = acc * b + limb
    return acc


@dataclass(frozen=True)
class LimbPair:
    """Aligned MSF limb vectors for a working pair (U, V).

    canonical means every limb is in [0, B), the leading U limb is nonzero
    unless U = 0, and recompose(u) >= recompose(v) >= 0. Matrix updates
    produce transient non-canonical limbs until `fix` is applied.
    """

    u_limbs: tuple[int, ...]
    v_limbs: tuple[int, ...]
    base: LimbBase
    canonical: bool = True

    def __post_init__(self) -> None:
        if len(self.u_limbs) != len(self.v_limbs):
            raise ValueError("u and v limb vectors must have equal length")

    @staticmethod
    def from_values(u: int, v: int, base: LimbBase) -> "LimbPair":
        if u < 0 or v < 0:
            raise ValueError("limb pairs hold nonnegative values")
        ul = decompose(u, base)
        vl = decompose(v, base)
        # zero-pad v on the left so both vectors share limb indices
        if len(vl) < len(ul):
            vl = [0] * (len(ul) - len(vl)) + vl
        elif len(ul) < len(vl):
            ul = [0] * (len(vl) - len(ul)) + ul
        return LimbPair(tuple(ul), tuple(vl), base, canonical=(u >= v))

    def values(self) -> tuple[int, int]:
        return recompose(self.u_limbs, self.base), recompose(self.v_limbs, self.base)


def window(p: LimbPair, i: int, j: int) -> tuple[int, int]:
    """Concatenated limbs i..j (1-based, inclusive) of both components."""
    if not 1 <= i <= j <= len(p.u_limbs):
        raise IndexError(f"window [{i}..{j}] out of range for {len(p.u_limbs)} limbs")
    wu = recompose(p.u_limbs[i - 1 : j], p.base)
    wv = recompose(p.v_limbs[i - 1 : j], p.base)
    return wu, wv


def _fix_vector(limbs: tuple[int, ...], b: int) -> list[int]:
    out = list(limbs)
    # least significant first; each limb drops into [0, B) and pushes its
    # carry (or borrow) one position up
    for k in range(len(out) - 1, 0, -1):
        carry, out[k] = divmod(out[k], b)
        out[k - 1] += carry
    return out


def fix(p: LimbPair) -> LimbPair:
    """Renormalize transient limbs into canonical base-B digits.

    Carries propagate least-significant-first. The head limb absorbs the
    final carry and may keep a bounded excess (or go negative when the whole
    value is negative); global sign handling is the caller's concern.
    """
    b = p.base.value
    ul = _fix_vector(p.u_limbs, b)
    vl = _fix_vector(p.v_limbs, b)
    u = recompose(ul, p.base)
    v = recompose(vl, p.base)
    canonical = 0 <= ul[0] < b and 0 <= vl[0] < b and u >= v >= 0
    return LimbPair(tuple(ul), tuple(vl), p.base, canonical=canonical)
