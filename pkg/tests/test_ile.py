"""Tests for the bounded extended-Euclid primitive against a step oracle."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from aeagcd.ile import ile, ile_bounded, stop_threshold
from aeagcd.mat2 import Mat2, apply, det, first_col_max, identity


def euclid_rows(u0, u1):
    """Full extended-Euclid chain: remainders and u-coefficient rows."""
    rems = [u0, u1]
    rows = [(1, 0), (0, 1)]
    while rems[-1]:
        q = rems[-2] // rems[-1]
        rems.append(rems[-2] - q * rems[-1])
        rows.append((rows[-2][0] - q * rows[-1][0], rows[-2][1] - q * rows[-1][1]))
    return rems, rows


def test_stop_threshold_formula():
    assert stop_threshold(20, 20) == 9
    assert stop_threshold(21, 21) == 9
    assert stop_threshold(31, 29) == 12
    assert stop_threshold(10, 4) == -2
    with pytest.raises(ValueError):
        stop_threshold(5, 6)
    with pytest.raises(ValueError):
        stop_threshold(5, -1)


def test_known_half_reductions():
    r = ile(879645, 674819)
    assert r.matrix == Mat2(369, -481, -425, 554)
    assert r.remainders == (1066, 601)
    assert r.steps == 8

    r = ile(956722, 591286)
    assert r.matrix == Mat2(-144, 233, 233, -377)
    assert r.remainders == (1670, 1404)

    r = ile(1836311, 1134903)
    assert r.matrix == Mat2(233, -377, -377, 610)
    assert r.remainders == (2032, 1583)


def test_known_bounded_reductions():
    r = ile_bounded(1233767, 451663, 8)
    assert r.matrix == Mat2(-41, 112, 231, -631)
    assert r.remainders == (1809, 824)

    r = ile_bounded(2178309, 1346269, 19)
    assert r.matrix == Mat2(0, 1, 1, -1)
    assert r.remainders == (1346269, 832040)
    assert r.steps == 1


def test_small_second_input_returns_identity():
    r = ile(1 << 40, 7)
    assert r.matrix == identity()
    assert r.remainders == (1 << 40, 7)
    assert r.steps == 0


def test_input_order_is_checked():
    with pytest.raises(ValueError):
        ile(3, 5)
    with pytest.raises(ValueError):
        ile(-3, -5)
    with pytest.raises(ValueError):
        ile_bounded(3, 5, 4)
    with pytest.raises(ValueError):
        ile_bounded(5, 3, -1)


def check_against_oracle(u0, u1, res, m):
    """The result must be an exact prefix of the Euclid chain, its rows under
    the coefficient bound, and the stop justified by the next step."""
    rems, rows = euclid_rows(u0, u1)
    k = res.steps
    assert res.matrix == Mat2(rows[k][0], rows[k][1], rows[k + 1][0], rows[k + 1][1])
    assert res.remainders == (rems[k], rems[k + 1])
    assert apply(res.matrix, (u0, u1)) == res.remainders
    assert abs(det(res.matrix)) == 1
    assert first_col_max(res.matrix) <= 1 << m or k == 0
    assert math.gcd(*res.remainders) == math.gcd(u0, u1)
    if k >= 1:
        assert res.remainders[0] > res.remainders[1] >= 0
    if res.remainders[1]:
        # stopping is justified either by the next coefficient bursting the
        # bound or by the next remainder dipping under the floor while the
        # chain is already near it
        a_next = abs(rows[k + 2][0]) if k + 2 < len(rows) else None
        r_next = rems[k + 2] if k + 2 < len(rems) else None
        over = a_next is not None and a_next > 1 << m
        under = r_next is not None and r_next < 1 << m and rems[k + 1] < 1 << (m + 2)
        assert over or under


def test_random_reductions_match_oracle():
    rng = random.Random(20260819)
    for _ in range(3000):
        nb = rng.randrange(4, 65)
        u0 = rng.getrandbits(nb) | (1 << (nb - 1))
        u1 = rng.randrange(u0 + 1)
        res = ile(u0, u1)
        n, p = u0.bit_length(), u1.bit_length()
        if p < (n + 1) // 2 + 1:
            assert res.steps == 0 and res.matrix == identity()
            continue
        check_against_oracle(u0, u1, res, stop_threshold(n, p))
        # half-size contract on the reduced remainder
        assert res.remainders[1].bit_length() <= (n + 1) // 2 + 1


def test_bounded_reductions_match_oracle():
    rng = random.Random(77)
    for _ in range(1500):
        nb = rng.randrange(6, 64)
        u0 = rng.getrandbits(nb) | (1 << (nb - 1))
        u1 = rng.randrange(u0 + 1)
        if u1.bit_length() < (u0.bit_length() + 1) // 2 + 1:
            continue
        m = rng.randrange(0, nb)
        check_against_oracle(u0, u1, ile_bounded(u0, u1, m), m)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2, max_value=1 << 64), st.integers(min_value=1, max_value=1 << 64))
def test_reduction_properties(a, b):
    u0, u1 = max(a, b), min(a, b)
    res = ile(u0, u1)
    assert apply(res.matrix, (u0, u1)) == res.remainders
    assert abs(det(res.matrix)) == 1
    assert math.gcd(*res.remainders) == math.gcd(u0, u1)
    assert res.remainders[1].bit_length() <= (u0.bit_length() + 1) // 2 + 1
