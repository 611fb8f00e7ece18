import random

import pytest
from hypothesis import given, settings, strategies as st

from ffcount.ffield import field_make
from ffcount.polyring import (Poly, QuotientRing, ZeroDivisorError, crt_combine, format_poly,
                              parse_poly, poly_add, poly_divmod, poly_gcd, poly_mul, qr_inv,
                              qr_pow)


def rand_poly(F, deg, rng):
    return Poly(F, [F.random_element(rng) for _ in range(deg + 1)])


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([2, 5, 101]), d=st.sampled_from([1, 2]), da=st.integers(0, 40),
       db=st.integers(0, 40), seed=st.integers(0, 10 ** 6))
def test_division_identity(p, d, da, db, seed):
    F = field_make(p, d, rng=random.Random(0))
    rng = random.Random(seed)
    a, b = rand_poly(F, da, rng), rand_poly(F, db, rng)
    if b.is_zero():
        return
    qt, r = poly_divmod(a, b)
    assert poly_add(poly_mul(qt, b), r) == a
    assert r.degree < b.degree


def test_divide_by_zero_polynomial():
    F = field_make(5)
    with pytest.raises(ZeroDivisionError):
        poly_divmod(Poly(F, [1, 2]), Poly(F))


def test_gcd_is_monic_and_divides():
    F = field_make(7)
    x = Poly.x(F)
    f = (x - 1) * (x - 2) * (x + 3)
    g = 3 * (x - 2) * (x + 3) * (x ** 2 + 1)
    h = poly_gcd(f, g)
    assert h == (x - 2) * (x + 3)
    assert h.lead() == F(1)


def test_mul_extension_field_matches_schoolbook():
    F = field_make(3, 3, rng=random.Random(0))
    rng = random.Random(1)
    a, b = rand_poly(F, 30, rng), rand_poly(F, 25, rng)
    ref = [F(0)] * 56
    for i in range(31):
        for j in range(26):
            ref[i + j] = ref[i + j] + a[i] * b[j]
    assert poly_mul(a, b) == Poly(F, ref)


def test_quotient_ring_inverse_and_power():
    F = field_make(5)
    x = Poly.x(F)
    R = QuotientRing(x ** 3 + x + 1)        # irreducible over F_5
    e = R(x ** 2 + 2)
    assert e * qr_inv(e) == R.one()
    assert qr_pow(R.x(), 5 ** 3) == R.x()   # Frobenius of order 3 on F_125


def test_qr_inv_reports_zero_divisor():
    F = field_make(7)
    x = Poly.x(F)
    R = QuotientRing((x - 1) * (x - 2))
    with pytest.raises(ZeroDivisorError) as info:
        qr_inv(R(3 * (x - 1)))
    assert info.value.factor == x - 1


def test_barrett_reduction_matches_division():
    F = field_make(101)
    rng = random.Random(4)
    m = rand_poly(F, 17, rng).monic()
    R = QuotientRing(m)
    for _ in range(20):
        a = rand_poly(F, rng.randrange(0, 34), rng)
        assert R(a).lift() == a % m


def test_crt():
    assert crt_combine([(2, 3), (3, 5)]) == (8, 15)
    assert crt_combine([(1, 2), (2, 3), (3, 5), (4, 7)]) == (53, 210)
    with pytest.raises(ValueError):
        crt_combine([(1, 4), (1, 6)])


def test_poly_text_round_trip():
    F = field_make(5)
    f = parse_poly(F, "1,0,3")
    assert f == Poly(F, [1, 0, 3])
    assert parse_poly(F, format_poly(f)) == f
    G = field_make(2, 2, [1, 1, 1])
    g = Poly(G, [G([1, 1]), G([0, 1]), G(1)])
    assert parse_poly(G, format_poly(g)) == g
