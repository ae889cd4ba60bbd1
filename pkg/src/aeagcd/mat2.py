"""2x2 signed integer matrices of extended-Euclid coefficients.

Rows are (a, b) coefficient pairs: applying a matrix to a column pair (u, v)
yields (a*u + b*v, c*u + d*v). Every matrix built from Euclid steps has
determinant +-1, which callers rely on as an integrity check.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d


IDENTITY = Mat2(1, 0, 0, 1)


def identity() -> Mat2:
    return IDENTITY


def mul(m: Mat2, n: Mat2) -> Mat2:
    """Exact matrix product m*n."""
    return Mat2(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def apply(m: Mat2, pair: tuple[int, int]) -> tuple[int, int]:
    """Matrix times column vector: (a*u + b*v, c*u + d*v)."""
    u, v = pair
    return m.a * u + m.b * v, m.c * u + m.d * v


def euclid_step(q: int) -> Mat2:
    """The single-division factor mapping (u, v) to (v, u - q*v)."""
    if q < 0:
        raise ValueError("euclid step quotient must be nonnegative")
    return Mat2(0, 1, 1, -q)


def det(m: Mat2) -> int:
    return m.a * m.d - m.b * m.c


def first_col_max(m: Mat2) -> int:
    """max(|a|, |c|): the coefficient pair the stop bound constrains."""
    return max(abs(m.a), abs(m.c))


def entry_max(m: Mat2) -> int:
    """Largest absolute entry over the whole matrix."""
    return max(abs(m.a), abs(m.b), abs(m.c), abs(m.d))


SWAP = Mat2(0, 1, 1, 0)
NEGATE_U = Mat2(-1, 0, 0, 1)
NEGATE_V = Mat2(1, 0, 0, -1)
