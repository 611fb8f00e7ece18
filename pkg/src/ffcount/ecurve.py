"""Weierstrass elliptic curves over F_q and their group law."""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .ffield import (FieldCtx, FieldElement, absolute_trace, format_element, legendre_chi,
                     parse_element, sqrt_mod)


class OpCounter:
    """Counts group operations (additions and doublings)."""

    def __init__(self):
        self.ops = 0


class Curve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``ctx``.

    ``short`` marks curves given as y^2 = x^3 + a x + b (then a4 = a, a6 = b
    and a1 = a2 = a3 = 0).
    """

    def __init__(self, ctx: FieldCtx, coeffs: Sequence, short: bool = False):
        self.ctx = ctx
        raws = [ctx(c).rep for c in coeffs]
        if short:
            if len(raws) != 2:
                raise ValueError("short model takes (a, b)")
            if ctx.p <= 3:
                raise ValueError("short Weierstrass model requires p > 3")
            z = ctx.zero
            raws = [z, z, z, raws[0], raws[1]]
        elif len(raws) != 5:
            raise ValueError("general model takes (a1, a2, a3, a4, a6)")
        self.short = short
        self.a1, self.a2, self.a3, self.a4, self.a6 = raws
        self.disc = self._discriminant()
        if ctx.is_zero(self.disc):
            raise ValueError("singular curve (discriminant 0)")

    # the short-model coefficient names
    @property
    def a(self) -> FieldElement:
        return FieldElement(self.ctx, self.a4)

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.ctx, self.a6)

    def coefficients(self) -> tuple:
        return tuple(FieldElement(self.ctx, r) for r in (self.a1, self.a2, self.a3, self.a4, self.a6))

    def _covariants(self):
        F = self.ctx
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        m, ad, sm = F.mul, F.add, F.smul
        b2 = ad(m(a1, a1), sm(a2, 4))
        b4 = ad(sm(a4, 2), m(a1, a3))
        b6 = ad(m(a3, a3), sm(a6, 4))
        b8 = F.sub(ad(ad(m(m(a1, a1), a6), sm(m(a2, a6), 4)), m(a2, m(a3, a3))),
                   ad(m(m(a1, a3), a4), m(a4, a4)))
        return b2, b4, b6, b8

    def _discriminant(self):
        F = self.ctx
        b2, b4, b6, b8 = self._covariants()
        m, sm = F.mul, F.smul
        t = F.neg(m(m(b2, b2), b8))
        t = F.sub(t, sm(m(b4, m(b4, b4)), 8))
        t = F.sub(t, sm(m(b6, b6), 27))
        t = F.add(t, sm(m(b2, m(b4, b6)), 9))
        return t

    def j_invariant(self) -> FieldElement:
        F = self.ctx
        b2, b4, _, _ = self._covariants()
        c4 = F.sub(F.mul(b2, b2), F.smul(b4, 24))
        return FieldElement(F, F.mul(F.pow(c4, 3), F.inv(self.disc)))

    def discriminant(self) -> FieldElement:
        return FieldElement(self.ctx, self.disc)

    def contains(self, x, y) -> bool:
        F = self.ctx
        x, y = F(x).rep, F(y).rep
        lhs = F.add(F.mul(y, y), F.add(F.mul(F.mul(self.a1, x), y), F.mul(self.a3, y)))
        return lhs == self.rhs(x)

    def rhs(self, x):
        """x^3 + a2 x^2 + a4 x + a6 for a raw x."""
        F = self.ctx
        return F.add(F.mul(F.add(F.mul(F.add(x, self.a2), x), self.a4), x), self.a6)

    def infinity(self) -> "Point":
        return Point(self, None, None)

    def point(self, x, y) -> "Point":
        F = self.ctx
        xr, yr = F(x).rep, F(y).rep
        if not self.contains(xr, yr):
            raise ValueError("(%s, %s) is not on the curve" % (x, y))
        return Point(self, xr, yr)

    def __eq__(self, other):
        return (isinstance(other, Curve) and self.ctx == other.ctx
                and (self.a1, self.a2, self.a3, self.a4, self.a6)
                == (other.a1, other.a2, other.a3, other.a4, other.a6))

    def __hash__(self):
        return hash((self.ctx, self.a1, self.a2, self.a3, self.a4, self.a6))

    def __repr__(self):
        return "Curve(%s over %r)" % (format_curve(self), self.ctx)


def curve_make(ctx: FieldCtx, model: str, coeffs: Sequence) -> Curve:
    """``model`` is ``"short"`` (coeffs a, b) or ``"general"`` (a1, a2, a3, a4, a6)."""
    if model not in ("short", "general"):
        raise ValueError("unknown curve model %r" % model)
    return Curve(ctx, coeffs, short=(model == "short"))


class Point:
    __slots__ = ("curve", "xr", "yr")

    def __init__(self, curve: Curve, xr, yr):
        self.curve = curve
        self.xr = xr
        self.yr = yr

    @property
    def is_infinity(self) -> bool:
        return self.xr is None

    @property
    def x(self) -> FieldElement:
        return FieldElement(self.curve.ctx, self.xr)

    @property
    def y(self) -> FieldElement:
        return FieldElement(self.curve.ctx, self.yr)

    def __add__(self, other):
        return point_add(self, other)

    def __neg__(self):
        return point_neg(self)

    def __sub__(self, other):
        return point_add(self, point_neg(other))

    def __rmul__(self, n: int):
        return scalar_mul(n, self)

    def __eq__(self, other):
        return (isinstance(other, Point) and self.curve == other.curve
                and self.xr == other.xr and self.yr == other.yr)

    def __hash__(self):
        return hash((self.xr, self.yr))

    def __repr__(self):
        if self.is_infinity:
            return "Point(O)"
        return "Point(%s, %s)" % (self.x, self.y)


def point_neg(P: Point) -> Point:
    if P.is_infinity:
        return P
    E, F = P.curve, P.curve.ctx
    y = F.neg(F.add(P.yr, F.add(F.mul(E.a1, P.xr), E.a3)))
    return Point(E, P.xr, y)


def _add_raw(E: Curve, x1, y1, x2, y2):
    """Group law on affine raws; returns (x3, y3) or None for O."""
    F = E.ctx
    if F.d == 1 and E.short:
        p = F.p
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            lam = (3 * x1 * x1 + E.a4) * pow(2 * y1, -1, p) % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        return x3, (lam * (x1 - x3) - y1) % p
    if x1 == x2:
        # y2 is either y1 or -y1 - a1 x1 - a3
        den = F.add(F.add(y1, y2), F.add(F.mul(E.a1, x2), E.a3))
        if F.is_zero(den):
            return None
        num = F.add(F.add(F.smul(F.mul(x1, x1), 3), F.smul(F.mul(E.a2, x1), 2)),
                    F.sub(E.a4, F.mul(E.a1, y1)))
        den = F.add(F.add(F.smul(y1, 2), F.mul(E.a1, x1)), E.a3)
        lam = F.mul(num, F.inv(den))
    else:
        lam = F.mul(F.sub(y2, y1), F.inv(F.sub(x2, x1)))
    x3 = F.sub(F.sub(F.add(F.mul(lam, lam), F.mul(E.a1, lam)), E.a2), F.add(x1, x2))
    y3 = F.sub(F.sub(F.mul(lam, F.sub(x1, x3)), y1), F.add(F.mul(E.a1, x3), E.a3))
    return x3, y3


def point_add(P: Point, Q: Point, counter: Optional[OpCounter] = None) -> Point:
    if P.curve != Q.curve:
        raise ValueError("points on different curves")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if counter is not None:
        counter.ops += 1
    r = _add_raw(P.curve, P.xr, P.yr, Q.xr, Q.yr)
    if r is None:
        return P.curve.infinity()
    return Point(P.curve, r[0], r[1])


def scalar_mul(n: int, P: Point, counter: Optional[OpCounter] = None) -> Point:
    """n*P by left-to-right double-and-add; negative n allowed."""
    if n < 0:
        return scalar_mul(-n, point_neg(P), counter)
    R = P.curve.infinity()
    if n == 0 or P.is_infinity:
        return R
    for bit in bin(n)[2:]:
        R = point_add(R, R, counter)
        if bit == "1":
            R = point_add(R, P, counter)
    return R


# ---------------------------------------------------------------------------


def _solve_artin_schreier(F: FieldCtx, c):
    """All z in F_{2^d} with z^2 + z = c (raw); empty list when none exist."""
    d = F.d
    basis = [F.from_coeffs([0] * i + [1]) for i in range(d)] if d > 1 else [1]

    def vec(r):
        return list(F.coeffs(r))

    # columns of the F_2-linear map z -> z^2 + z
    cols = [vec(F.add(F.mul(e, e), e)) for e in basis]
    rows = [[cols[j][i] for j in range(d)] + [vec(c)[i]] for i in range(d)]
    pivots = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, d) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(d):
            if i != r and rows[i][col]:
                rows[i] = [(u + v) % 2 for u, v in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[d] for row in rows[r:]):
        return []
    sol = [0] * d
    for i, col in enumerate(pivots):
        sol[col] = rows[i][d]
    z = F.from_coeffs(sol)
    # kernel of z^2 + z is F_2
    return [z, F.add(z, F.one)]


def random_point(E: Curve, rng: random.Random, max_draws: int = 1000) -> Point:
    """A random affine point of E(F_q)."""
    F = E.ctx
    for _ in range(max_draws):
        x = F.random_raw(rng)
        h = F.add(F.mul(E.a1, x), E.a3)
        g = E.rhs(x)
        if F.p != 2:
            # y = (-h +- sqrt(h^2 + 4g)) / 2
            disc = FieldElement(F, F.add(F.mul(h, h), F.smul(g, 4)))
            if legendre_chi(disc) == -1:
                continue
            s = sqrt_mod(disc, rng).rep
            if rng.random() < 0.5:
                s = F.neg(s)
            y = F.mul(F.sub(s, h), F.inv(F.from_int(2)))
        else:
            if F.is_zero(h):
                y = F.pow(g, F.q // 2)
            else:
                hinv = F.inv(h)
                zs = _solve_artin_schreier(F, F.mul(g, F.mul(hinv, hinv)))
                if not zs:
                    continue
                y = F.mul(h, zs[rng.randrange(2)])
        P = Point(E, x, y)
        assert E.contains(x, y)
        return P
    raise RuntimeError("no affine point found after %d draws" % max_draws)


def quadratic_twist(E: Curve, omega) -> Curve:
    """The quadratic twist of E.

    For odd p, ``omega`` is a non-square and the short model twists to
    y^2 = x^3 + a w^2 x + b w^3; general models are first brought to
    y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4.  For p = 2, ``omega`` must have
    absolute trace 1 and a2, a6 become a2 + w a1^2, a6 + w a3^2.
    """
    F = E.ctx
    w = F(omega)
    a1, a2, a3, a4, a6 = E.coefficients()
    if F.p == 2:
        if absolute_trace(w) != 1:
            raise ValueError("twist parameter %s has trace 0" % w)
        return Curve(F, [a1, a2 + w * a1 * a1, a3, a4, a6 + w * a3 * a3])
    if legendre_chi(w) != -1:
        raise ValueError("twist parameter %s is a square" % w)
    if E.short:
        return Curve(F, [E.a * w * w, E.b * w * w * w], short=True)
    b2 = a1 * a1 + 4 * a2
    b4 = a1 * a3 + 2 * a4
    b6 = a3 * a3 + 4 * a6
    inv2, inv4 = F(2).inverse(), F(4).inverse()
    return Curve(F, [0, w * b2 * inv4, 0, w * w * b4 * inv2, w * w * w * b6 * inv4])


def point_order_in_window(P: Point, center: int, radius: int,
                          counter: Optional[OpCounter] = None) -> list[int]:
    """All m in [center - radius, center + radius] with m*P = O, sorted.

    Baby steps jP for 0 <= j <= s are keyed by x-coordinate, so each table
    hit matches both jP and -jP and the giant stride can be 2s + 1.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    lo, hi = center - radius, center + radius
    if P.is_infinity:
        return list(range(lo, hi + 1))
    width = hi - lo + 1
    s = math.isqrt(width // 2) + 1
    stride = 2 * s + 1
    table: dict = {}
    R = P.curve.infinity()
    for j in range(1, s + 1):
        R = point_add(R, P, counter)
        if R.is_infinity:
            # order of P is j: the answer is just the multiples of j
            return [m for m in range(lo + (-lo) % j, hi + 1, j)]
        table.setdefault(R.xr, []).append((j, R.yr))
    m0 = lo + s
    Q = scalar_mul(m0, P, counter)
    step = scalar_mul(stride, P, counter)
    found = set()
    n_giant = -(-width // stride)
    for i in range(n_giant):
        base = m0 + i * stride
        if Q.is_infinity:
            found.add(base)
        else:
            for j, yj in table.get(Q.xr, ()):
                if yj == Q.yr:
                    found.add(base - j)
                if point_neg(Point(P.curve, Q.xr, yj)).yr == Q.yr:
                    found.add(base + j)
        if i + 1 < n_giant:
            Q = point_add(Q, step, counter)
    return sorted(m for m in found if lo <= m <= hi)


# ---------------------------------------------------------------------------


def parse_curve(ctx: FieldCtx, text: str) -> Curve:
    """``short:a,b`` or ``general:a1,a2,a3,a4,a6``; for d > 1 the
    coefficients are separated by ``;`` and each is an element in ``c0,c1,...`` form."""
    model, _, body = text.strip().partition(":")
    model = model.strip().lower()
    sep = "," if ctx.d == 1 else ";"
    coeffs = [parse_element(ctx, s) for s in body.split(sep)]
    return curve_make(ctx, model, coeffs)


def format_curve(E: Curve) -> str:
    sep = "," if E.ctx.d == 1 else ";"
    if E.short:
        return "short:" + sep.join(format_element(c) for c in (E.a, E.b))
    return "general:" + sep.join(format_element(c) for c in E.coefficients())
