import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from ffcount.counting import (CountError, CountResult, cornacchia, count_bsgs, count_cm,
                              count_naive, exact_order, hasse_window)
from ffcount.ecurve import curve_make, quadratic_twist, random_point, scalar_mul
from ffcount.ffield import field_make, random_twist_parameter
from oracles import cornacchia_brute, count_points


def random_short(F, rng):
    while True:
        try:
            return curve_make(F, "short", [F.random_element(rng), F.random_element(rng)])
        except ValueError:
            pass


def random_general(F, rng):
    while True:
        try:
            return curve_make(F, "general", [F.random_element(rng) for _ in range(5)])
        except ValueError:
            pass


def test_hasse_window_examples():
    assert hasse_window(5) == (2, 10)
    assert hasse_window(4) == (1, 9)
    lo, hi = hasse_window(1048609)
    assert lo <= 1049412 <= hi


def test_naive_examples():
    F = field_make(5)
    r = count_naive(curve_make(F, "short", [1, 1]))
    assert (r.n_points, r.trace) == (9, -3)
    G = field_make(2)
    r = count_naive(curve_make(G, "general", [1, 0, 0, 0, 1]))
    assert (r.n_points, r.trace) == (4, -1)


def test_naive_published_count():
    F = field_make(1048609)
    assert count_naive(curve_make(F, "short", [0, -1])).n_points == 1049412


@pytest.mark.parametrize("p,d", [(7, 1), (13, 1), (2, 1), (2, 3), (2, 4), (3, 1), (3, 2), (5, 2)])
def test_naive_matches_oracle(p, d):
    F = field_make(p, d, rng=random.Random(d))
    rng = random.Random(p * 10 + d)
    for _ in range(6):
        E = random_general(F, rng)
        coeffs = [c.rep for c in E.coefficients()]
        expected = count_points(p, coeffs, None if d == 1 else F.modulus)
        assert count_naive(E).n_points == expected


def test_naive_guard():
    F = field_make(1000003)
    with pytest.raises(CountError):
        count_naive(curve_make(F, "short", [1, 1]), guard=1000)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 101, 1009, 10007])
def test_bsgs_matches_naive(p):
    F = field_make(p)
    rng = random.Random(p)
    for _ in range(10):
        E = random_short(F, rng)
        b = count_bsgs(E, random.Random(rng.random()))
        assert b.n_points == count_naive(E).n_points
        lo, hi = hasse_window(F.q)
        assert lo <= b.n_points <= hi


@pytest.mark.parametrize("p,d", [(2, 6), (2, 9), (3, 5), (5, 3), (7, 2)])
def test_bsgs_general_models(p, d):
    F = field_make(p, d, rng=random.Random(0))
    rng = random.Random(d)
    for _ in range(4):
        E = random_general(F, rng)
        assert count_bsgs(E, random.Random(1)).n_points == count_naive(E).n_points


def test_bsgs_operation_count():
    F = field_make(1048609)
    E = curve_make(F, "short", [0, -1])
    r = count_bsgs(E, random.Random(3))
    assert r.n_points == 1049412
    bound = 4 * math.sqrt(8 * math.sqrt(F.q))
    assert all(ops <= bound for ops in r.info["ops_per_point"])


@pytest.mark.parametrize("p", [5, 7, 101, 2003])
def test_twist_identity(p):
    F = field_make(p)
    rng = random.Random(p)
    for _ in range(10):
        E = random_short(F, rng)
        T = quadratic_twist(E, random_twist_parameter(F, rng))
        assert count_naive(E).n_points + count_naive(T).n_points == 2 * (p + 1)


def test_twist_identity_characteristic_two():
    F = field_make(2, 5)
    rng = random.Random(0)
    for _ in range(10):
        E = random_general(F, rng)
        T = quadratic_twist(E, random_twist_parameter(F, rng))
        assert count_naive(E).n_points + count_naive(T).n_points == 2 * (F.q + 1)


def test_exact_order():
    F = field_make(1009)
    E = curve_make(F, "short", [1, 7])
    n = count_naive(E).n_points
    rng = random.Random(2)
    for _ in range(5):
        P = random_point(E, rng)
        k = exact_order(P, [n])
        assert scalar_mul(k, P).is_infinity
        assert n % k == 0
        for r in {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}:
            if k % r == 0:
                assert not scalar_mul(k // r, P).is_infinity


def test_count_result_validation_and_json():
    F = field_make(5)
    E = curve_make(F, "short", [1, 1])
    with pytest.raises(ValueError):
        CountResult(E, 10, -3, "naive")
    with pytest.raises(ValueError):
        CountResult(E, 1, 5, "naive")
    rec = json.loads(count_naive(E).to_json())
    assert rec["n_points"] == "9" and rec["trace"] == "-3" and rec["q"] == "5"


def test_cornacchia_examples():
    assert cornacchia(3, 7) == [(1, 3), (4, 2), (5, 1)]
    assert cornacchia(7, 11) == [(4, 2)]
    with pytest.raises(ValueError):
        cornacchia(44, 11)     # D = 4q is not coprime to q
    with pytest.raises(ValueError):
        cornacchia(1, 7)       # -1 is not a square mod 7


@settings(max_examples=150, deadline=None)
@given(D=st.integers(1, 200), q=st.sampled_from([3, 5, 7, 9, 11, 13, 25, 27, 49, 97, 101, 121,
                                                 243, 1009, 3125, 10007]))
def test_cornacchia_complete(D, q):
    p = min(r for r in range(2, q + 1) if q % r == 0)
    if D % p == 0:
        return
    brute = [s for s in cornacchia_brute(D, q) if math.gcd(*s) in (1, 2)]
    try:
        sols = cornacchia(D, q)
    except ValueError:
        assert brute == []
        return
    assert sols == brute
    for x, y in sols:
        assert x * x + D * y * y == 4 * q


def test_count_cm():
    # y^2 = x^3 + x + 1 over F_5 has t = -3 and 4q - t^2 = 11
    F = field_make(5)
    E = curve_make(F, "short", [1, 1])
    assert count_cm(E, 11, random.Random(0)).n_points == 9
    # y^2 = x^3 + b has CM by -3 when p = 1 mod 3
    G = field_make(1000003)
    E = curve_make(G, "short", [0, 5])
    r = count_cm(E, 3, random.Random(1))
    assert r.n_points == count_bsgs(E, random.Random(2)).n_points
    with pytest.raises(CountError):
        count_cm(curve_make(G, "short", [1, 5]), 3, random.Random(1))
