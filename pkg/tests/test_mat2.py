"""Tests for 2x2 coefficient matrices: products, application, step factors."""

import random

from hypothesis import given, strategies as st

from aeagcd.mat2 import (
    IDENTITY,
    Mat2,
    apply,
    det,
    entry_max,
    euclid_step,
    first_col_max,
    identity,
    mul,
)

W1 = Mat2(369, -481, -425, 554)
W2 = Mat2(-41, 112, 231, -631)
MERGED_BIN = Mat2(-62729, 81769, 353414, -460685)
L_FIRST = Mat2(-144, 233, 233, -377)
R_FIRST = Mat2(233, -377, -377, 610)
L_MERGED = Mat2(-121393, 196418, 196418, -317811)
L_FINAL = Mat2(196418, -317811, -317811, 514229)


def test_identity():
    assert identity() == IDENTITY == Mat2(1, 0, 0, 1)
    assert apply(identity(), (7, 3)) == (7, 3)
    assert det(identity()) == 1


def test_mul_known_products():
    assert mul(W2, W1) == MERGED_BIN
    assert mul(R_FIRST, L_FIRST) == L_MERGED
    assert mul(MERGED_BIN, identity()) == MERGED_BIN
    assert mul(identity(), MERGED_BIN) == MERGED_BIN


def test_apply_known_reductions():
    assert apply(MERGED_BIN, (922375420941, 707599307587)) == (1873414, 725479)
    assert apply(L_FINAL, (956722026041, 591286729879)) == (1346269, 832040)


def test_euclid_step():
    assert euclid_step(1) == Mat2(0, 1, 1, -1)
    assert apply(euclid_step(1), (2178309, 1346269)) == (1346269, 832040)
    assert mul(euclid_step(1), L_MERGED) == L_FINAL
    assert euclid_step(0) == Mat2(0, 1, 1, 0)
    q, u, v = 13, 1000, 71
    assert apply(euclid_step(q), (u, v)) == (v, u - q * v)


def test_det_and_column_bound():
    assert det(W1) == 1
    assert det(W2) == -1
    assert abs(det(MERGED_BIN)) == 1
    assert abs(det(L_MERGED)) == 1
    assert first_col_max(L_FINAL) == 317811
    assert first_col_max(W1) == 425
    assert entry_max(W1) == 554


def test_row_sign_pattern_of_step_products():
    # Rows of a nontrivial quotient product alternate signs within the row
    # and down the first column.
    rng = random.Random(11)
    for _ in range(200):
        m = euclid_step(rng.randrange(1, 50))
        for _ in range(rng.randrange(1, 12)):
            m = mul(euclid_step(rng.randrange(1, 50)), m)
        assert abs(det(m)) == 1
        if m.a and m.b:
            assert (m.a > 0) != (m.b > 0)
        if m.c and m.d:
            assert (m.c > 0) != (m.d > 0)
        if m.a and m.c:
            assert (m.a > 0) != (m.c > 0)


small_int = st.integers(min_value=-(10**9), max_value=10**9)
mat = st.builds(Mat2, small_int, small_int, small_int, small_int)
pair = st.tuples(small_int, small_int)


@given(mat, pair, pair)
def test_apply_is_linear(m, x, y):
    sx = (x[0] + y[0], x[1] + y[1])
    ax, ay = apply(m, x), apply(m, y)
    assert apply(m, sx) == (ax[0] + ay[0], ax[1] + ay[1])


@given(mat, mat, mat, pair)
def test_mul_associative_and_compatible(m, n, k, x):
    assert mul(mul(m, n), k) == mul(m, mul(n, k))
    assert apply(mul(m, n), x) == apply(m, apply(n, x))


@given(st.lists(st.integers(min_value=1, max_value=1000), min_size=1, max_size=20))
def test_quotient_products_are_unimodular(qs):
    m = identity()
    for q in qs:
        m = mul(euclid_step(q), m)
    assert abs(det(m)) == 1
