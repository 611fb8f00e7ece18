import random

import pytest
from hypothesis import given, settings, strategies as st

from ffcount.counting import count_naive
from ffcount.ecurve import curve_make
from ffcount.ffield import field_make
from ffcount.zetalab import (CountSeq, Variety, ZetaFn, bombieri_bound, brute_force_variety_count,
                             counts_to_zeta, parse_variety, variety_counts, weil_modulus_check,
                             zeta_elliptic, zeta_to_counts)


def poly_from_roots(roots):
    c = [1]
    for g in roots:
        c = [a - g * b for a, b in zip(c + [0], [0] + c)]
    return tuple(c)


def test_zeta_fn_invariants():
    with pytest.raises(ValueError):
        ZetaFn((2, 1), (1,))
    with pytest.raises(ValueError):
        ZetaFn((1, -1), (1, -2, 1))       # common factor 1 - t
    Z = ZetaFn((1, 0, 0), (1, -3))
    assert Z.num == (1,)


def test_zeta_elliptic_examples():
    Z = zeta_elliptic(5, -3)
    assert Z.num == (1, 3, 5) and Z.den == (1, -6, 5)
    assert zeta_elliptic(7, 0).num == (1, 0, 7)
    assert zeta_elliptic(1048609, -802).num == (1, 802, 1048609)
    with pytest.raises(ValueError):
        zeta_elliptic(5, 5)


def test_zeta_to_counts_examples():
    assert zeta_to_counts(ZetaFn((1,), (1, -5)), 3).counts == [5, 25, 125]
    assert zeta_to_counts(zeta_elliptic(5, -3), 2).counts == [9, 27]
    assert zeta_to_counts(ZetaFn((1,), poly_from_roots([1, 1, 1])), 2).counts == [3, 3]


def test_counts_to_zeta_examples():
    assert counts_to_zeta([5 ** k for k in range(1, 6)], 2) == ZetaFn((1,), (1, -5))
    counts = zeta_to_counts(zeta_elliptic(5, -3), 9)
    assert counts_to_zeta(counts, 4) == zeta_elliptic(5, -3)
    with pytest.raises(ValueError):
        counts_to_zeta([3] * 5, 2)
    assert counts_to_zeta([3] * 7, 3) == ZetaFn((1,), poly_from_roots([1, 1, 1]))
    with pytest.raises(ValueError):
        counts_to_zeta([1, 2, 3], 2)      # too short for the bound


@settings(max_examples=50, deadline=None)
@given(num=st.lists(st.integers(-4, 4), max_size=3), den=st.lists(st.integers(-4, 4), max_size=3))
def test_round_trip(num, den):
    if set(num) & set(den):
        return
    Z = ZetaFn(poly_from_roots(num), poly_from_roots(den))
    B = Z.degree
    assert counts_to_zeta(zeta_to_counts(Z, 2 * B + 1), B) == Z


def test_weil_check():
    rep = weil_modulus_check(zeta_elliptic(5, -3), 5, dim=1)
    assert rep.ok
    mods = sorted(round(m, 9) for kind, _, m, s, _ in rep.roots if kind == "numerator")
    assert mods == [pytest.approx(5 ** 0.5)] * 2
    assert weil_modulus_check(ZetaFn((1,), (1, -5)), 5).ok
    assert not weil_modulus_check(ZetaFn((1, 10, 5), (1, -6, 5)), 5).ok


def test_bombieri_bound():
    assert bombieri_bound(3, 2, 1) == 21 ** 3


def test_brute_force_examples():
    assert brute_force_variety_count(parse_variety("3 ; 2 ; 1:2,0 + 1:0,2"), 1) == 1
    assert brute_force_variety_count(parse_variety("7 ; 3 ;"), 1) == 343
    assert brute_force_variety_count(parse_variety("7 ; 2 ;"), 2) == 7 ** 4
    V = parse_variety("5 ; 2 ; 1:0,2 -1:3,0 -1:1,0 -1:0,0")
    assert brute_force_variety_count(V, 1) == 8
    with pytest.raises(ValueError):
        brute_force_variety_count(V, 1, guard=10)


def test_brute_force_over_extension_base():
    # y^2 + xy = x^3 + 1 over F_4: affine count = count_naive - 1
    F = field_make(2, 2, [1, 1, 1])
    V = parse_variety("2,2,1,1,1 ; 2 ; 1:0,2 + 1:1,1 + 1:3,0 + 1:0,0")
    E = curve_make(F, "general", [1, 0, 0, 0, 1])
    assert brute_force_variety_count(V, 1) == count_naive(E).n_points - 1
    # coefficient outside F_2: x + g = 0 has exactly one root in F_16
    W = parse_variety("2,2,1,1,1 ; 1 ; 1:1 + 0,1:0")
    assert brute_force_variety_count(W, 2) == 1


@pytest.mark.parametrize("p", [5, 7])
def test_n2_matches_projective_brute_force(p):
    F = field_make(p)
    rng = random.Random(p)
    done = 0
    while done < 4:
        a, b = rng.randrange(p), rng.randrange(p)
        if (4 * a ** 3 + 27 * b * b) % p == 0:
            continue
        t = p + 1 - count_naive(curve_make(F, "short", [a, b])).n_points
        V = parse_variety("%d ; 2 ; 1:0,2 -1:3,0 %d:1,0 %d:0,0" % (p, -a, -b))
        N2 = zeta_to_counts(zeta_elliptic(p, t), 2)[1]
        assert N2 == brute_force_variety_count(V, 2) + 1
        done += 1


def test_variety_zeta_reconstruction():
    V = parse_variety("3 ; 2 ; 1:2,0 + 1:0,2")
    Z = counts_to_zeta(variety_counts(V, 7), 3)
    assert Z == ZetaFn((1, 1), (1, 0, -9))


def test_count_seq_container():
    s = CountSeq([1, 2, 3])
    assert len(s) == 3 and s[1] == 2 and list(s) == [1, 2, 3]
    assert isinstance(parse_variety("2 ; 1 ; 1:1"), Variety)
