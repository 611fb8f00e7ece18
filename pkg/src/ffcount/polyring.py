"""Univariate polynomials over F_q, quotient rings F_q[x]/(m), and integer CRT."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from . import _fp_poly as fp
from .ffield import FieldCtx, FieldElement, format_element, parse_element

# ---------------------------------------------------------------------------
# raw layer: coefficient lists of field raws, lowest degree first, trimmed


def _trim(ctx: FieldCtx, a: list) -> list:
    if ctx.d == 1:
        return fp.trim(a)
    while a and not any(a[-1]):
        a.pop()
    return a


def _add(ctx, a, b):
    if ctx.d == 1:
        return fp.add(a, b, ctx.p)
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = ctx.add(out[i], c)
    return _trim(ctx, out)


def _sub(ctx, a, b):
    if ctx.d == 1:
        return fp.sub(a, b, ctx.p)
    out = list(a) + [ctx.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = ctx.sub(out[i], c)
    return _trim(ctx, out)


def _scale(ctx, a, c):
    if ctx.d == 1:
        return fp.scale(a, c, ctx.p)
    if ctx.is_zero(c):
        return []
    return _trim(ctx, [ctx.mul(x, c) for x in a])


def _mul(ctx, a, b):
    if ctx.d == 1:
        return fp.mul(a, b, ctx.p)
    if not a or not b:
        return []
    # two-level Kronecker substitution: coefficients are polynomials in the
    # field generator z, laid out in blocks of 2d-1 slots
    d, p = ctx.d, ctx.p
    block = 2 * d - 1
    nb = fp._slot_bytes(min(len(a), len(b)) * d, p)
    pad = (0,) * (d - 1)

    def pack2(poly):
        flat = []
        for c in poly:
            flat.extend(c)
            flat.extend(pad)
        return fp.pack(flat, nb)

    count = (len(a) + len(b) - 1) * block
    slots = fp.unpack(pack2(a) * pack2(b), nb, count)
    out = []
    for i in range(len(a) + len(b) - 1):
        zpoly = fp.trim([c % p for c in slots[i * block:(i + 1) * block]])
        out.append(ctx._reduce(zpoly))
    return _trim(ctx, out)


def _divmod(ctx, a, b):
    if ctx.d == 1:
        return fp.divmod_(a, b, ctx.p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    inv_lead = ctx.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    q = [ctx.zero] * (len(a) - db)
    for k in range(len(a) - len(b), -1, -1):
        c = ctx.mul(r[k + db], inv_lead)
        q[k] = c
        if not ctx.is_zero(c):
            for j in range(db + 1):
                r[k + j] = ctx.sub(r[k + j], ctx.mul(c, b[j]))
    return _trim(ctx, q), _trim(ctx, r[:db])


def _monic(ctx, a):
    if not a:
        return []
    return _scale(ctx, a, ctx.inv(a[-1]))


def _gcd(ctx, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod(ctx, a, b)[1]
    return _monic(ctx, a)


def _xgcd(ctx, a, b):
    if ctx.d == 1:
        return fp.xgcd(a, b, ctx.p)
    r0, r1 = list(a), list(b)
    s0, s1 = [ctx.one], []
    while r1:
        q, r = _divmod(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(ctx, s0, _mul(ctx, q, s1))
    if not r0:
        return [], s0, None
    c = ctx.inv(r0[-1])
    return _scale(ctx, r0, c), _scale(ctx, s0, c), None


def _series_inverse(ctx, f, k):
    """Inverse of ``f`` (with f[0] != 0) modulo z^k by Newton iteration."""
    g = [ctx.inv(f[0])]
    prec = 1
    two = ctx.from_int(2)
    while prec < k:
        prec = min(2 * prec, k)
        fg = _mul(ctx, f[:prec], g)[:prec]
        corr = _sub(ctx, [two], fg)
        g = _mul(ctx, g, corr)[:prec]
        g = _trim(ctx, g)
    return g


# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial over a finite field; immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable = ()):
        self.ctx = ctx
        raw = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.ctx != ctx:
                    raise ValueError("coefficient from a different field")
                raw.append(c.rep)
            elif isinstance(c, int):
                raw.append(ctx.from_int(c))
            else:
                raw.append(ctx.from_coeffs(list(c)))
        self.coeffs = _trim(ctx, raw)

    @classmethod
    def _wrap(cls, ctx, raw):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = raw
        return obj

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls._wrap(ctx, [ctx.zero, ctx.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> FieldElement:
        return FieldElement(self.ctx, self.coeffs[-1])

    def __getitem__(self, i: int) -> FieldElement:
        if 0 <= i < len(self.coeffs):
            return FieldElement(self.ctx, self.coeffs[i])
        return FieldElement(self.ctx, self.ctx.zero)

    def _other(self, other) -> list:
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return other.coeffs
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return _trim(self.ctx, [other.rep])
        if isinstance(other, int):
            return _trim(self.ctx, [self.ctx.from_int(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Poly._wrap(self.ctx, _add(self.ctx, self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Poly._wrap(self.ctx, _sub(self.ctx, self.coeffs, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Poly._wrap(self.ctx, _sub(self.ctx, o, self.coeffs))

    def __neg__(self):
        return Poly._wrap(self.ctx, _sub(self.ctx, [], self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Poly._wrap(self.ctx, _mul(self.ctx, self.coeffs, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly._wrap(self.ctx, [self.ctx.one])
        for bit in bin(n)[2:]:
            result = result * result
            if bit == "1":
                result = result * self
        return result

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o

    def __hash__(self):
        return hash((self.ctx, tuple(self.coeffs)))

    def monic(self) -> "Poly":
        return Poly._wrap(self.ctx, _monic(self.ctx, self.coeffs))

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.ctx.zero
        xr = self.ctx(x).rep
        for c in reversed(self.coeffs):
            acc = self.ctx.add(self.ctx.mul(acc, xr), c)
        return FieldElement(self.ctx, acc)

    def derivative(self) -> "Poly":
        return Poly._wrap(self.ctx, _trim(self.ctx, [self.ctx.smul(c, i) for i, c in enumerate(self.coeffs)][1:]))

    def __repr__(self):
        return "Poly(%s over %r)" % (format_poly(self), self.ctx)


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``f = q*g + r`` with ``deg r < deg g``."""
    o = f._other(g)
    if o is NotImplemented:
        raise TypeError("cannot divide by %r" % (g,))
    q, r = _divmod(f.ctx, f.coeffs, o)
    return Poly._wrap(f.ctx, q), Poly._wrap(f.ctx, r)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    o = f._other(g)
    return Poly._wrap(f.ctx, _gcd(f.ctx, f.coeffs, o))


# ---------------------------------------------------------------------------


class ZeroDivisorError(ArithmeticError):
    """Raised when a non-unit is inverted in F_q[x]/(m).

    ``factor`` is the monic gcd of the element and the modulus, a proper
    nontrivial divisor of the modulus.
    """

    def __init__(self, factor: Poly):
        super().__init__("zero divisor; modulus has factor of degree %d" % factor.degree)
        self.factor = factor


class QuotientRing:
    """F_q[x]/(m) for a monic modulus ``m``, with Barrett-style reduction."""

    def __init__(self, modulus: Poly):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.ctx = modulus.ctx
        self.modulus = modulus.monic()
        self._m = self.modulus.coeffs
        n = self.modulus.degree
        self.n = n
        rev = list(reversed(self._m))
        self._rinv = _series_inverse(self.ctx, rev, max(n - 1, 1))

    def reduce(self, a: list) -> list:
        """Reduce a raw polynomial of degree <= 2n - 2."""
        ctx, n = self.ctx, self.n
        if len(a) <= n:
            return a
        if len(a) > 2 * n - 1:
            return _divmod(ctx, a, self._m)[1]
        k = len(a) - n  # quotient has k coefficients
        rev_top = list(reversed(a))[:k]
        qrev = _mul(ctx, rev_top, self._rinv[:k])[:k]
        qrev = qrev + [ctx.zero] * (k - len(qrev))
        quo = _trim(ctx, list(reversed(qrev)))
        low = _mul(ctx, quo, self._m)[:n]
        r = _sub(ctx, a[:n], low)
        return r

    def __call__(self, value) -> "QuotientElem":
        if isinstance(value, QuotientElem):
            return value
        if isinstance(value, Poly):
            raw = value.coeffs
        else:
            raw = Poly(self.ctx, [value] if isinstance(value, (int, FieldElement)) else value).coeffs
        if len(raw) > self.n:
            raw = _divmod(self.ctx, raw, self._m)[1]
        return QuotientElem(self, raw)

    def one(self) -> "QuotientElem":
        return QuotientElem(self, [self.ctx.one])

    def zero(self) -> "QuotientElem":
        return QuotientElem(self, [])

    def x(self) -> "QuotientElem":
        return self(Poly.x(self.ctx))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)


class QuotientElem:
    __slots__ = ("ring", "rep")

    def __init__(self, ring: QuotientRing, rep: list):
        self.ring = ring
        self.rep = rep

    def _raw(self, other):
        if isinstance(other, QuotientElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("elements of different quotient rings")
            return other.rep
        return self.ring(other).rep

    def __add__(self, other):
        return QuotientElem(self.ring, _add(self.ring.ctx, self.rep, self._raw(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return QuotientElem(self.ring, _sub(self.ring.ctx, self.rep, self._raw(other)))

    def __rsub__(self, other):
        return QuotientElem(self.ring, _sub(self.ring.ctx, self._raw(other), self.rep))

    def __neg__(self):
        return QuotientElem(self.ring, _sub(self.ring.ctx, [], self.rep))

    def __mul__(self, other):
        ctx = self.ring.ctx
        o = self._raw(other)
        if ctx.d == 1:
            prod = fp.mul(self.rep, o, ctx.p)
        else:
            prod = _mul(ctx, self.rep, o)
        return QuotientElem(self.ring, self.ring.reduce(prod))

    __rmul__ = __mul__

    def square(self) -> "QuotientElem":
        ctx = self.ring.ctx
        if ctx.d == 1:
            prod = fp.sqr(self.rep, ctx.p)
        else:
            prod = _mul(ctx, self.rep, self.rep)
        return QuotientElem(self.ring, self.ring.reduce(prod))

    def scale(self, c) -> "QuotientElem":
        ctx = self.ring.ctx
        c = ctx(c).rep
        return QuotientElem(self.ring, _scale(ctx, self.rep, c))

    def __pow__(self, n: int):
        return qr_pow(self, n)

    def is_zero(self) -> bool:
        return not self.rep

    def __eq__(self, other):
        if isinstance(other, QuotientElem):
            return self.rep == other.rep and self.ring == other.ring
        return self.rep == self._raw(other)

    def __hash__(self):
        return hash(tuple(self.rep))

    def lift(self) -> Poly:
        return Poly._wrap(self.ring.ctx, list(self.rep))

    def inverse(self) -> "QuotientElem":
        return qr_inv(self)

    def __repr__(self):
        return "QuotientElem(%s mod %s)" % (format_poly(self.lift()), format_poly(self.ring.modulus))


def qr_pow(e: QuotientElem, n: int) -> QuotientElem:
    """``e**n`` by left-to-right binary exponentiation."""
    if n < 0:
        return qr_pow(qr_inv(e), -n)
    result = e.ring.one()
    if n == 0:
        return result
    for bit in bin(n)[2:]:
        result = result.square()
        if bit == "1":
            result = result * e
    return result


def qr_inv(e: QuotientElem) -> QuotientElem:
    """Inverse in F_q[x]/(m); raises ZeroDivisorError carrying gcd(e, m)."""
    ring = e.ring
    ctx = ring.ctx
    if not e.rep:
        raise ZeroDivisionError("inverse of zero")
    g, s, _ = _xgcd(ctx, e.rep, ring._m)
    if len(g) != 1:
        raise ZeroDivisorError(Poly._wrap(ctx, g))
    return QuotientElem(ring, _divmod(ctx, s, ring._m)[1] if len(s) > ring.n else s)


# ---------------------------------------------------------------------------


def crt_combine(residues: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Chinese remaindering of ``[(r_i, m_i)]`` into ``(r, M)``, 0 <= r < M."""
    r, M = 0, 1
    for ri, mi in residues:
        if mi < 1:
            raise ValueError("moduli must be positive")
        if math.gcd(M, mi) != 1:
            raise ValueError("moduli are not pairwise coprime")
        # r + M*k = ri (mod mi)
        k = ((ri - r) * pow(M, -1, mi)) % mi if mi > 1 else 0
        r += M * k
        M *= mi
    return r % M, M


# ---------------------------------------------------------------------------


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    """Coefficients lowest degree first; ``,``-separated for prime fields,
    ``;``-separated (each an element in ``a,b,...`` form) otherwise."""
    text = text.strip()
    if not text:
        return Poly(ctx)
    if ctx.d == 1:
        return Poly(ctx, [int(s) for s in text.split(",")])
    return Poly(ctx, [parse_element(ctx, s) for s in text.split(";")])


def format_poly(f: Poly) -> str:
    ctx = f.ctx
    if ctx.d == 1:
        return ",".join(str(c) for c in f.coeffs)
    return ";".join(format_element(FieldElement(ctx, c)) for c in f.coeffs)
