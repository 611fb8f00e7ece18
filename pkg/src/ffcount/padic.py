"""Truncated unramified 2-adic rings and Mestre's AGM point counting.

Z_q is presented as Z_2[x]/(M) where M is the {0,1}-lift of the modulus of
F_{2^d}.  Elements are stored modulo 2^N with a per-element count of bits that
are actually known.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .counting import CountError, CountResult
from .ecurve import Curve
from .ffield import FieldCtx


class PadicCtx:
    """Z_2[x]/(M) mod 2^N, with the Frobenius lift sigma precomputed."""

    def __init__(self, field: FieldCtx, N: int):
        if field.p != 2:
            raise ValueError("the 2-adic ring needs a base field of characteristic 2")
        if N < 8:
            raise ValueError("working precision must be at least 8 bits")
        self.field = field
        self.d = field.d
        self.N = N
        self.mask = (1 << N) - 1
        self.modulus = [0, 1] if field.d == 1 else list(field.modulus)
        self._sigma_x = self._lift_frobenius()
        self._sigma_cols = self._sigma_matrix()

    # ---- raw layer: lists of d ints in [0, 2^N) ---------------------------
    def reduce(self, poly: list) -> list:
        d, mask, M = self.d, self.mask, self.modulus
        poly = [c & mask for c in poly]
        for i in range(len(poly) - 1, d - 1, -1):
            c = poly[i]
            if c:
                base = i - d
                for j in range(d):
                    if M[j]:
                        poly[base + j] = (poly[base + j] - c * M[j]) & mask
        poly = poly[:d]
        return poly + [0] * (d - len(poly))

    def mul_raw(self, a: list, b: list) -> list:
        out = [0] * (2 * self.d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return self.reduce(out)

    def _lift_frobenius(self) -> list:
        if self.d == 1:
            return [0]
        # Newton on M(s) = 0 from s = x^2
        s = self.reduce([0, 0, 1])
        dM = [(i * c) for i, c in enumerate(self.modulus)][1:]
        for _ in range(2 * self.N.bit_length() + 4):
            val = self._eval(self.modulus, s)
            if not any(val):
                break
            s = self._sub(s, self.mul_raw(val, self._inv_raw(self._eval(dM, s))))
        else:
            raise AssertionError("Frobenius lift did not converge")
        return s

    def _eval(self, coeffs: Sequence[int], s: list) -> list:
        acc = [0] * self.d
        for c in reversed(coeffs):
            acc = self.mul_raw(acc, s)
            acc[0] = (acc[0] + c) & self.mask
        return acc

    def _sub(self, a, b):
        return [(x - y) & self.mask for x, y in zip(a, b)]

    def _inv_raw(self, a: list) -> list:
        F = self.field
        if self.d == 1:
            if not a[0] & 1:
                raise ZeroDivisionError("not a 2-adic unit")
            return [pow(a[0], -1, 1 << self.N)]
        bar = F.from_coeffs([c & 1 for c in a])
        if F.is_zero(bar):
            raise ZeroDivisionError("not a 2-adic unit")
        y = list(F.coeffs(F.inv(bar)))
        # Hensel: y <- y (2 - a y), doubling the known bits each round
        bits = 1
        while bits < self.N:
            ay = self.mul_raw(a, y)
            two_minus = [(-c) & self.mask for c in ay]
            two_minus[0] = (two_minus[0] + 2) & self.mask
            y = self.mul_raw(y, two_minus)
            bits *= 2
        return y

    def _sigma_matrix(self) -> list:
        # column i is sigma(x^i)
        cols, cur = [], [1] + [0] * (self.d - 1)
        for _ in range(self.d):
            cols.append(cur)
            cur = self.mul_raw(cur, self._sigma_x) if self.d > 1 else cur
        return cols

    def sigma_raw(self, a: list) -> list:
        if self.d == 1:
            return list(a)
        out = [0] * self.d
        for ai, col in zip(a, self._sigma_cols):
            if ai:
                for j, c in enumerate(col):
                    out[j] += ai * c
        return [c & self.mask for c in out]

    # ---- element construction ---------------------------------------------
    def __call__(self, value, prec: Optional[int] = None) -> "PadicElem":
        if isinstance(value, int):
            rep = [value & self.mask] + [0] * (self.d - 1)
        else:
            rep = self.reduce(list(value))
        return PadicElem(self, rep, self.N if prec is None else min(prec, self.N))

    def x(self) -> "PadicElem":
        return self([0, 1]) if self.d > 1 else self(0)

    def sigma_x(self) -> "PadicElem":
        return PadicElem(self, list(self._sigma_x), self.N)

    def __repr__(self):
        return "PadicCtx(d=%d, N=%d)" % (self.d, self.N)


def padic_ctx(field: FieldCtx, N: int) -> PadicCtx:
    return PadicCtx(field, N)


class PadicElem:
    __slots__ = ("ctx", "rep", "prec")

    def __init__(self, ctx: PadicCtx, rep: list, prec: int):
        self.ctx = ctx
        self.rep = rep
        self.prec = prec

    def _other(self, other):
        if isinstance(other, PadicElem):
            if other.ctx is not self.ctx:
                raise ValueError("elements of different 2-adic rings")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        mask = self.ctx.mask
        return PadicElem(self.ctx, [(a + b) & mask for a, b in zip(self.rep, o.rep)],
                         min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        mask = self.ctx.mask
        return PadicElem(self.ctx, [(-a) & mask for a in self.rep], self.prec)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PadicElem(self.ctx, self.ctx.mul_raw(self.rep, o.rep), min(self.prec, o.prec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return padic_div(self, self._other(other))

    def is_unit(self) -> bool:
        F = self.ctx.field
        return not F.is_zero(F.from_coeffs([c & 1 for c in self.rep]))

    def inverse(self) -> "PadicElem":
        return PadicElem(self.ctx, self.ctx._inv_raw(self.rep), self.prec)

    def sigma(self) -> "PadicElem":
        return PadicElem(self.ctx, self.ctx.sigma_raw(self.rep), self.prec)

    def residue(self, bits: Optional[int] = None) -> list:
        """Coefficients reduced mod 2^bits (default: the known precision)."""
        m = (1 << (self.prec if bits is None else bits)) - 1
        return [c & m for c in self.rep]

    def congruent(self, other, bits: int) -> bool:
        o = self._other(other)
        return self.residue(bits) == o.residue(bits)

    def half(self) -> "PadicElem":
        """Exact division by 2 of an element that is 0 mod 2; loses one bit."""
        if any(c & 1 for c in self.residue()):
            raise ZeroDivisionError("element is not divisible by 2")
        return PadicElem(self.ctx, [c >> 1 for c in self.rep], self.prec - 1)

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        bits = min(self.prec, o.prec)
        return self.residue(bits) == o.residue(bits)

    def __hash__(self):
        return hash(tuple(self.residue()))

    def __repr__(self):
        return "PadicElem(%s, prec=%d)" % (list(self.residue()), self.prec)


def padic_add(a: PadicElem, b: PadicElem) -> PadicElem:
    return a + b


def padic_mul(a: PadicElem, b: PadicElem) -> PadicElem:
    return a * b


def padic_div(a: PadicElem, b: PadicElem) -> PadicElem:
    if not b.is_unit():
        raise ZeroDivisionError("division by a non-unit")
    return a * b.inverse()


def sqrt_1mod8(u: PadicElem) -> PadicElem:
    """The square root of u = 1 mod 8 that is 1 mod 4, valid to prec(u) - 1 bits."""
    if u.prec < 4:
        raise ValueError("need at least 4 bits of precision")
    if not u.congruent(1, 3):
        raise ValueError("argument is not 1 mod 8")
    ctx = u.ctx
    # s = 1 + 4w with 2w^2 + w = v, where u = 1 + 8v
    v = [(c >> 3) for c in (u - 1).rep]
    v = PadicElem(ctx, v, u.prec - 3)
    w = v
    for _ in range(2 * ctx.N.bit_length() + 2):
        g = w * w * 2 + w - v
        if not any(g.rep):
            break
        w = w - g / (w * 4 + 1)
    s = w * 4 + 1
    s.prec = u.prec - 1
    return s


def padic_norm(a: PadicElem) -> PadicElem:
    """Product of the d conjugates of a unit; a constant."""
    if not a.is_unit():
        raise ValueError("norm of a non-unit")
    acc, conj = a, a
    for _ in range(a.ctx.d - 1):
        conj = conj.sigma()
        acc = acc * conj
    assert not any(acc.residue()[1:]), "norm is not in the prime ring"
    return acc


@dataclass
class AgmState:
    xi: PadicElem
    n: int = 4


def agm_step(s: AgmState) -> AgmState:
    xi = s.xi
    if xi.prec < 5:
        raise ArithmeticError("AGM precision exhausted")
    assert xi.congruent(1, 3), "AGM invariant xi = 1 mod 8 broken"
    root = sqrt_1mod8(xi)
    nxt = (xi + 1).half() * root.inverse()
    nxt.prec = xi.prec - 2
    assert nxt.congruent(1, 3), "AGM invariant xi = 1 mod 8 broken"
    return AgmState(nxt, s.n + 1)


def agm_shape(E: Curve) -> Optional[object]:
    """c if E is y^2 + xy = x^3 + c over F_{2^d}, else None."""
    F = E.ctx
    if F.p != 2:
        return None
    if E.a1 != F.one or not all(F.is_zero(c) for c in (E.a2, E.a3, E.a4)):
        return None
    return E.a6


def agm_bits(d: int) -> int:
    """Number of low bits of the trace needed: smallest n with 2^n > 4 sqrt(2^d)."""
    return d // 2 + 3


def agm_iterations(d: int) -> int:
    # the congruence t = t_n + q/t_n is only reliable mod 2^(n-1)
    return max(4, agm_bits(d) + 1)


def agm_precision(d: int) -> int:
    n = agm_iterations(d)
    return n + 2 * (n - 4) + 8


def agm_count(E: Curve, log: Optional[Callable[[str], None]] = None) -> CountResult:
    """#E(F_{2^d}) for y^2 + xy = x^3 + c, c != 0, by the 2-adic AGM."""
    t0 = time.perf_counter()
    F = E.ctx
    c = agm_shape(E)
    if c is None:
        raise ValueError("AGM needs a curve y^2 + xy = x^3 + c over a field of characteristic 2")
    if F.is_zero(c):
        raise ValueError("c = 0 gives a singular curve")
    d, q = F.d, F.q
    n = agm_iterations(d)
    R = PadicCtx(F, agm_precision(d))
    state = AgmState(R([8 * b for b in F.coeffs(c)]) + 1, 4)
    while state.n < n:
        if log is not None:
            log("n=%d prec=%d" % (state.n, state.xi.prec))
        state = agm_step(state)
    if log is not None:
        log("n=%d prec=%d" % (state.n, state.xi.prec))
    xi = state.xi
    mu = xi * (xi + 1).half().inverse()
    mu.prec = xi.prec - 1
    assert mu.congruent(1, 2), "mu is not 1 mod 4"
    tn = padic_norm(mu)
    bits = agm_bits(d)
    if tn.prec < bits:
        raise ArithmeticError("not enough precision left for the trace")
    mod = 1 << bits
    u = tn.rep[0] % mod
    r = (u + q * pow(u, -1, mod)) % mod
    t = r if 2 * r <= mod else r - mod
    if t * t > 4 * q:
        raise CountError("AGM trace outside the Hasse bound")
    return CountResult(E, q + 1 - t, t, "agm", time.perf_counter() - t0, {"iterations": n})
