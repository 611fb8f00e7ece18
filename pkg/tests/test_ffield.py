import random

import pytest
from hypothesis import given, settings, strategies as st

from ffcount import _fp_poly as fp
from ffcount.ffield import (absolute_trace, canonical_root, field_make, format_element, frobenius,
                            legendre_chi, parse_element, random_nonsquare, sqrt_mod)
from oracles import gf_mul, sqrt_candidates

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_inverse_in_f7():
    F = field_make(7)
    assert F(3).inverse() == F(5)
    assert int(F(3) * F(5)) == 1


def test_f4_generator_squares_to_x_plus_one():
    F = field_make(2, 2, [1, 1, 1])
    x = F.gen()
    assert (x * x).coeffs() == (1, 1)


def test_field_make_rejects_bad_input():
    with pytest.raises(ValueError):
        field_make(9)
    with pytest.raises(ValueError):
        field_make(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ValueError):
        field_make(5, 2, [2, 0, 2])  # not monic


def test_random_modulus_is_irreducible():
    for p, d in [(2, 7), (3, 5), (5, 3), (101, 2)]:
        F = field_make(p, d, rng=random.Random(p + d))
        assert fp.is_irreducible(list(F.modulus), p)
        assert F.q == p ** d


def test_multiplication_matches_oracle():
    F = field_make(3, 4, rng=random.Random(1))
    rng = random.Random(2)
    for _ in range(200):
        a, b = F.random_element(rng), F.random_element(rng)
        assert (a * b).rep == gf_mul(a.rep, b.rep, F.modulus, 3)


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([2, 3, 5, 7, 13]), d=st.integers(1, 4), seed=st.integers(0, 10 ** 6))
def test_field_axioms(p, d, seed):
    F = field_make(p, d, rng=random.Random(d))
    rng = random.Random(seed)
    a, b, c = (F.random_element(rng) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == F(0)
    if not a.is_zero():
        assert a * a.inverse() == F(1)
        assert a ** (F.q - 1) == F(1)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)


def test_inverse_of_zero_raises():
    F = field_make(5, 2)
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()


def test_legendre_matches_euler_enumeration():
    for p in [3, 5, 7, 11, 13]:
        F = field_make(p)
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            expected = 0 if a == 0 else (1 if a in squares else -1)
            assert legendre_chi(F(a)) == expected


def test_sqrt_mod_examples():
    F = field_make(7)
    assert sqrt_mod(F(2)) == F(3)          # 3^2 = 9 = 2, canonical root <= 3
    with pytest.raises(ValueError):
        sqrt_mod(F(3))
    F13 = field_make(13)                    # 13 = 1 mod 4: Tonelli-Shanks
    assert int(sqrt_mod(F13(10))) in (6, 7)


@settings(max_examples=200, deadline=None)
@given(p=st.sampled_from(SMALL_PRIMES[1:]), b=st.integers(0, 10 ** 6), seed=st.integers(0, 99))
def test_sqrt_mod_recovers_root(p, b, seed):
    F = field_make(p)
    r = sqrt_mod(F(b * b), random.Random(seed))
    assert int(r) in sqrt_candidates(b * b, p)
    assert int(r) <= (p - 1) // 2


def test_sqrt_in_extension_field():
    rng = random.Random(3)
    for p, d in [(3, 2), (5, 3), (7, 2), (13, 2)]:
        F = field_make(p, d, rng=rng)
        for _ in range(30):
            b = F.random_element(rng)
            r = sqrt_mod(b * b, rng)
            assert r == b or r == -b
            assert r == canonical_root(r)


def test_random_nonsquare():
    F = field_make(5, 2)
    for seed in range(10):
        assert legendre_chi(random_nonsquare(F, random.Random(seed))) == -1


def test_absolute_trace_is_additive():
    F = field_make(2, 5)
    rng = random.Random(0)
    for _ in range(50):
        a, b = F.random_element(rng), F.random_element(rng)
        assert absolute_trace(a + b) == (absolute_trace(a) + absolute_trace(b)) % 2
    assert sum(absolute_trace(a) for a in F.elements()) == 16


def test_text_round_trip():
    F = field_make(5, 3)
    for a in F.elements():
        assert parse_element(F, format_element(a)) == a
    assert parse_element(F, "1,0,1") == F([1, 0, 1])


def test_karatsuba_and_kronecker_agree_with_schoolbook():
    rng = random.Random(7)
    for p in [2, 7, 1000003]:
        for n, m in [(1, 1), (5, 40), (70, 65), (200, 3)]:
            a = [rng.randrange(p) for _ in range(n)]
            b = [rng.randrange(p) for _ in range(m)]
            ref = fp.schoolbook(a, b, p)
            assert fp.karatsuba(a, b, p, cutoff=8) == ref
            assert fp.kronecker(a, b, p) == ref
