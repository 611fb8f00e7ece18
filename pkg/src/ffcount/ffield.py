"""Prime and extension finite fields F_q, q = p^d.

A :class:`FieldCtx` describes the field; its methods work on *raw*
representations (an ``int`` in ``[0, p)`` when ``d == 1``, a ``d``-tuple of
such ints, lowest degree first, otherwise).  Polynomial and curve code uses the
raw layer for speed; :class:`FieldElement` wraps a raw value for everything
user-facing.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from sympy import isprime

from . import _fp_poly as fp

Raw = Union[int, tuple]


@dataclass(frozen=True)
class FieldCtx:
    p: int
    d: int = 1
    modulus: Optional[tuple] = None
    q: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.d)

    # ---- raw layer -------------------------------------------------------
    @property
    def zero(self) -> Raw:
        return 0 if self.d == 1 else (0,) * self.d

    @property
    def one(self) -> Raw:
        return 1 if self.d == 1 else (1,) + (0,) * (self.d - 1)

    def from_int(self, n: int) -> Raw:
        n %= self.p
        return n if self.d == 1 else (n,) + (0,) * (self.d - 1)

    def from_coeffs(self, coeffs: Sequence[int]) -> Raw:
        coeffs = [c % self.p for c in coeffs]
        if self.d == 1:
            if len(coeffs) > 1 and any(coeffs[1:]):
                raise ValueError("prime-field element takes a single coefficient")
            return coeffs[0] if coeffs else 0
        if len(coeffs) > self.d:
            rem = fp.mod(fp.trim(list(coeffs)), list(self.modulus), self.p)
            coeffs = rem
        return tuple(coeffs) + (0,) * (self.d - len(coeffs))

    def coeffs(self, a: Raw) -> tuple:
        return (a,) if self.d == 1 else a

    def is_zero(self, a: Raw) -> bool:
        return a == 0 if self.d == 1 else not any(a)

    def add(self, a: Raw, b: Raw) -> Raw:
        p = self.p
        if self.d == 1:
            return (a + b) % p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Raw, b: Raw) -> Raw:
        p = self.p
        if self.d == 1:
            return (a - b) % p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Raw) -> Raw:
        p = self.p
        if self.d == 1:
            return (-a) % p
        return tuple((-x) % p for x in a)

    def mul(self, a: Raw, b: Raw) -> Raw:
        p = self.p
        if self.d == 1:
            return (a * b) % p
        prod = fp.schoolbook(fp.trim(list(a)), fp.trim(list(b)), p)
        return self._reduce(prod)

    def smul(self, a: Raw, n: int) -> Raw:
        """Multiply by an integer scalar."""
        p = self.p
        if self.d == 1:
            return (a * n) % p
        return tuple((x * n) % p for x in a)

    def _reduce(self, poly: list) -> Raw:
        if len(poly) > self.d:
            poly = fp.mod(poly, list(self.modulus), self.p)
        return tuple(poly) + (0,) * (self.d - len(poly))

    def inv(self, a: Raw) -> Raw:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        if self.d == 1:
            return pow(a, -1, self.p)
        g, s, _ = fp.xgcd(fp.trim(list(a)), list(self.modulus), self.p)
        assert g == [1]
        return self._reduce(s)

    def pow(self, a: Raw, n: int) -> Raw:
        if self.d == 1:
            if n < 0:
                return pow(self.inv(a), -n, self.p)
            return pow(a, n, self.p)
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        for bit in bin(n)[2:]:
            result = self.mul(result, result)
            if bit == "1":
                result = self.mul(result, a)
        return result

    def random_raw(self, rng: random.Random) -> Raw:
        if self.d == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.d))

    def raw_elements(self) -> Iterator[Raw]:
        if self.d == 1:
            return iter(range(self.p))
        return iter(itertools.product(range(self.p), repeat=self.d))

    # ---- element layer ---------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.from_coeffs(list(value)))

    def gen(self) -> "FieldElement":
        """The class of x in F_p[x]/(modulus)."""
        if self.d == 1:
            raise ValueError("prime field has no polynomial generator")
        return FieldElement(self, self.from_coeffs([0, 1]))

    def elements(self) -> Iterator["FieldElement"]:
        return (FieldElement(self, r) for r in self.raw_elements())

    def random_element(self, rng: random.Random) -> "FieldElement":
        return FieldElement(self, self.random_raw(rng))

    def __repr__(self):
        if self.d == 1:
            return "F_%d" % self.p
        return "F_%d^%d[%s]" % (self.p, self.d, ",".join(map(str, self.modulus)))


class FieldElement:
    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: FieldCtx, rep: Raw):
        self.ctx = ctx
        self.rep = rep

    def _coerce(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("field mismatch: %r vs %r" % (self.ctx, other.ctx))
            return other.rep
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.rep, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.rep, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.rep))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.rep, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.rep, self.ctx.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(o, self.ctx.inv(self.rep)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.rep))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.rep, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.rep))

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.rep)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.rep == other.rep
        if isinstance(other, int):
            return self.rep == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.d, self.rep))

    def __int__(self):
        if self.ctx.d != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.rep

    def coeffs(self) -> tuple:
        return self.ctx.coeffs(self.rep)

    def __repr__(self):
        return "FieldElement(%s in %r)" % (format_element(self), self.ctx)

    def __str__(self):
        return format_element(self)


# ---- construction ------------------------------------------------------------

def field_make(p: int, d: int = 1, modulus: Optional[Sequence[int]] = None,
               rng: Optional[random.Random] = None) -> FieldCtx:
    """Build F_{p^d}.

    ``modulus`` is a coefficient list, lowest degree first, of a monic
    irreducible polynomial of degree ``d``.  When it is omitted for ``d > 1``
    one is found by sampling random monic polynomials.
    """
    if p < 2 or not isprime(p):
        raise ValueError("p = %d is not prime" % p)
    if d < 1:
        raise ValueError("extension degree must be >= 1")
    if d == 1:
        if modulus is not None and len(fp.trim([c % p for c in modulus])) != 2:
            raise ValueError("degree-1 modulus must be linear")
        return FieldCtx(p, 1, None)
    if modulus is None:
        rng = rng or random.Random(p * 1000003 + d)
        while True:
            cand = [rng.randrange(p) for _ in range(d)] + [1]
            if fp.is_irreducible(cand, p):
                return FieldCtx(p, d, tuple(cand))
    mod = fp.trim([c % p for c in modulus])
    if len(mod) != d + 1 or mod[-1] != 1:
        raise ValueError("modulus must be monic of degree %d" % d)
    if not fp.is_irreducible(mod, p):
        raise ValueError("modulus %s is reducible over F_%d" % (mod, p))
    return FieldCtx(p, d, tuple(mod))


# ---- characters and square roots ---------------------------------------------

def legendre_chi(a: FieldElement) -> int:
    """Quadratic character: 1 on nonzero squares, 0 on zero, -1 otherwise."""
    ctx = a.ctx
    if ctx.p == 2:
        raise ValueError("quadratic character undefined in characteristic 2")
    if a.is_zero():
        return 0
    e = ctx.pow(a.rep, (ctx.q - 1) // 2)
    return 1 if e == ctx.one else -1


def random_nonsquare(ctx: FieldCtx, rng: Optional[random.Random] = None) -> FieldElement:
    if ctx.p == 2:
        raise ValueError("every element of a binary field is a square")
    rng = rng or random.Random()
    while True:
        a = ctx.random_element(rng)
        if legendre_chi(a) == -1:
            return a


def absolute_trace(a: FieldElement) -> int:
    """Tr_{F_q/F_p}(a) as an int in [0, p)."""
    F = a.ctx
    t = y = a.rep
    for _ in range(F.d - 1):
        y = F.pow(y, F.p)
        t = F.add(t, y)
    return F.coeffs(t)[0]


def random_twist_parameter(ctx: FieldCtx, rng: Optional[random.Random] = None) -> FieldElement:
    """A non-square for odd p; an element of absolute trace 1 for p = 2."""
    if ctx.p != 2:
        return random_nonsquare(ctx, rng)
    rng = rng or random.Random()
    while True:
        a = ctx.random_element(rng)
        if absolute_trace(a) == 1:
            return a


def canonical_root(r: FieldElement) -> FieldElement:
    """Pick the representative of {r, -r} used as the canonical square root."""
    ctx = r.ctx
    s = -r
    if ctx.d == 1:
        return r if r.rep <= (ctx.p - 1) // 2 else s
    return r if r.rep <= s.rep else s


def sqrt_mod(a: FieldElement, rng: Optional[random.Random] = None) -> FieldElement:
    """Canonical square root of ``a``; raises ValueError on a non-residue."""
    ctx = a.ctx
    if ctx.p == 2:
        raise ValueError("square roots in characteristic 2 are not supported")
    if a.is_zero():
        return a
    chi = legendre_chi(a)
    if chi != 1:
        raise ValueError("%s is not a square in %r" % (a, ctx))
    q = ctx.q
    if q % 4 == 3:
        return canonical_root(a ** ((q + 1) // 4))
    # Tonelli-Shanks: q - 1 = 2^k * s with s odd
    s, k = q - 1, 0
    while s % 2 == 0:
        s //= 2
        k += 1
    z = random_nonsquare(ctx, rng)
    m = k
    c = z ** s
    t = a ** s
    r = a ** ((s + 1) // 2)
    one = ctx(1)
    while t != one:
        i, t2 = 0, t
        while t2 != one:
            t2 = t2 * t2
            i += 1
        assert i < m
        b = c ** (1 << (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b
    assert r * r == a
    return canonical_root(r)


def frobenius(a: FieldElement) -> FieldElement:
    """The absolute Frobenius a -> a^p."""
    if a.ctx.d == 1:
        return a
    return a ** a.ctx.p


# ---- text format -------------------------------------------------------------

def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    """Parse ``"3"`` or ``"1,0,1"`` (coefficients lowest degree first)."""
    parts = [s.strip() for s in text.strip().split(",") if s.strip()]
    if not parts:
        raise ValueError("empty field element")
    return ctx([int(s) for s in parts])


def format_element(a: FieldElement) -> str:
    """Inverse of :func:`parse_element`; trailing zero coefficients are dropped."""
    if a.ctx.d == 1:
        return str(a.rep)
    cs = list(a.rep)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return ",".join(str(c) for c in cs)
