"""Schoof's algorithm: trace of Frobenius modulo small primes, then CRT."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from sympy import nextprime

from .counting import CountError, CountResult
from .ecurve import Curve
from .polyring import Poly, QuotientRing, ZeroDivisorError, crt_combine, poly_gcd, qr_inv, qr_pow


class DivPolyCache:
    """Division polynomials of a short Weierstrass curve.

    ``psi(n)`` is a polynomial in x alone: psi_n itself for odd n, and
    psi_n / y for even n (so psi(2) = 2).
    """

    def __init__(self, E: Curve):
        if not E.short or E.ctx.p <= 3:
            raise ValueError("division polynomials need a short model with p > 3")
        self.curve = E
        F = E.ctx
        x = Poly.x(F)
        a, b = E.a, E.b
        self.f = x ** 3 + a * x + b
        self._f2 = self.f * self.f
        self._half = F(2).inverse()
        self._cache = {
            0: Poly(F),
            1: Poly(F, [1]),
            2: Poly(F, [2]),
            3: 3 * x ** 4 + 6 * a * x ** 2 + 12 * b * x - a * a,
            4: 4 * (x ** 6 + 5 * a * x ** 4 + 20 * b * x ** 3 - 5 * a * a * x ** 2
                    - 4 * a * b * x - 8 * b * b - a ** 3),
        }

    def psi(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative index")
        if n in self._cache:
            return self._cache[n]
        # iterate upwards so the recursion depth stays small
        for k in range(5, n + 1):
            if k not in self._cache:
                self._cache[k] = self._compute(k)
        return self._cache[n]

    def _compute(self, n: int) -> Poly:
        g = self._cache
        m = n // 2
        if n % 2:
            if m % 2 == 0:
                return self._f2 * g[m + 2] * g[m] ** 3 - g[m - 1] * g[m + 1] ** 3
            return g[m + 2] * g[m] ** 3 - self._f2 * g[m - 1] * g[m + 1] ** 3
        return g[m] * (g[m + 2] * g[m - 1] ** 2 - g[m - 2] * g[m + 1] ** 2) * self._half


def division_polys(E: Curve, lmax: int) -> DivPolyCache:
    cache = DivPolyCache(E)
    p = E.ctx.p
    cache.psi(lmax)
    for ell in range(3, lmax + 1, 2):
        if ell != p and all(ell % r for r in range(3, int(ell ** 0.5) + 1, 2)):
            deg = cache.psi(ell).degree
            assert deg == (ell * ell - 1) // 2, (ell, deg)
    return cache


# ---------------------------------------------------------------------------


def trace_mod_2(E: Curve) -> int:
    """t mod 2: t is even iff x^3 + a x + b has a root in F_q."""
    F = E.ctx
    x = Poly.x(F)
    f = x ** 3 + E.a * x + E.b
    R = QuotientRing(f)
    xq = qr_pow(R.x(), F.q).lift()
    g = poly_gcd(xq - x, f)
    return 0 if g.degree >= 1 else 1


class _TorsionArith:
    """Group law on points (X(x), y*Y(x)) with coordinates in F_q[x]/(h)."""

    def __init__(self, E: Curve, h: Poly):
        self.R = QuotientRing(h)
        x = Poly.x(E.ctx)
        self.f = self.R(x ** 3 + E.a * x + E.b)
        self.a = self.R(E.a)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        X1, Y1 = P
        X2, Y2 = Q
        dx = X2 - X1
        if dx.is_zero():
            if (Y1 + Y2).is_zero():
                return None
            if (Y1 - Y2).is_zero():
                return self.double(P)
            # equal on part of the torsion, opposite on the rest
            qr_inv(Y1 + Y2)
            raise AssertionError("unreachable: Y1 + Y2 should be a zero divisor")
        lam = (Y2 - Y1) * qr_inv(dx)
        X3 = self.f * lam.square() - X1 - X2
        Y3 = lam * (X1 - X3) - Y1
        return X3, Y3

    def double(self, P):
        if P is None:
            return None
        X, Y = P
        if Y.is_zero():
            return None
        num = X.square().scale(3) + self.a
        lam = num * qr_inv((self.f * Y).scale(2))
        X3 = self.f * lam.square() - X.scale(2)
        Y3 = lam * (X - X3) - Y
        return X3, Y3

    def mul(self, k: int, P):
        R = None
        for bit in bin(k)[2:]:
            R = self.double(R)
            if bit == "1":
                R = self.add(R, P)
        return R

    def neg(self, P):
        return None if P is None else (P[0], -P[1])


@dataclass
class EllResidue:
    ell: int
    residue: int
    dim: int
    restarts: int

    def log_line(self) -> str:
        return "ℓ=%d t≡%d dim=%d restarts=%d" % (self.ell, self.residue, self.dim, self.restarts)


def _trace_mod_ell_detail(E: Curve, ell: int, cache: Optional[DivPolyCache] = None) -> EllResidue:
    F = E.ctx
    q = F.q
    if ell % 2 == 0 or ell == F.p:
        raise ValueError("ell must be an odd prime different from p")
    cache = cache or DivPolyCache(E)
    h = cache.psi(ell).monic()
    restarts = 0
    while True:
        try:
            return EllResidue(ell, _search(E, ell, h, q), h.degree, restarts)
        except ZeroDivisorError as exc:
            g = exc.factor.monic()
            cofactor = (h // g).monic()
            new = g if g.degree >= cofactor.degree else cofactor
            assert 1 <= new.degree < h.degree
            h = new
            restarts += 1


def _search(E: Curve, ell: int, h: Poly, q: int) -> int:
    A = _TorsionArith(E, h)
    x = A.R.x()
    Xp = qr_pow(x, q)
    Yp = qr_pow(A.f, (q - 1) // 2)
    Xp2 = qr_pow(Xp, q)
    Yp2 = Yp * qr_pow(Yp, q)
    # v = pi^2 + [q] on the tautological point
    V = A.add((Xp2, Yp2), A.mul(q % ell, (x, A.R.one())))
    if V is None:
        return 0
    pi = (Xp, Yp)
    U = pi
    for t in range(1, (ell - 1) // 2 + 1):
        if U is not None and U[0] == V[0]:
            if U[1] == V[1]:
                return t
            if U[1] == -V[1]:
                return (-t) % ell
            qr_inv(U[1] - V[1])
            raise AssertionError("unreachable: mixed signs should expose a zero divisor")
        U = A.add(U, pi)
    raise ArithmeticError("no trace candidate matched for ell = %d" % ell)


def trace_mod_ell(E: Curve, ell: int, cache: Optional[DivPolyCache] = None) -> int:
    """The residue t with pi^2 - t pi + q = 0 on E[ell]."""
    return _trace_mod_ell_detail(E, ell, cache).residue


# ---------------------------------------------------------------------------


@dataclass
class PrimePlan:
    primes: list
    product: int


def make_prime_plan(q: int, p: int) -> PrimePlan:
    """Smallest prefix of 2, 3, 5, ... (skipping p) with product > 4 sqrt(q)."""
    primes, L, ell = [], 1, 2
    while L * L <= 16 * q:
        if ell != p:
            primes.append(ell)
            L *= ell
        ell = nextprime(ell)
    return PrimePlan(primes, L)


def _residue_task(args):
    E, ell = args
    if ell == 2:
        return EllResidue(2, trace_mod_2(E), 3, 0)
    return _trace_mod_ell_detail(E, ell)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("FFCOUNT_THREADS", "1")))
    except ValueError:
        return 1


def schoof_count(E: Curve, workers: Optional[int] = None,
                 log: Optional[Callable[[str], None]] = None) -> CountResult:
    """#E(F_q) by Schoof's algorithm (short model, p > 3).

    Each ell is an independent task; with ``workers > 1`` they run in a
    process pool.
    """
    t0 = time.perf_counter()
    F = E.ctx
    if not E.short or F.p <= 3:
        raise ValueError("schoof_count needs a short Weierstrass curve with p > 3")
    q = F.q
    plan = make_prime_plan(q, F.p)
    workers = default_workers() if workers is None else workers
    tasks = [(E, ell) for ell in plan.primes]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            residues = list(pool.map(_residue_task, tasks))
    else:
        cache = DivPolyCache(E)
        residues = []
        for _, ell in tasks:
            if ell == 2:
                residues.append(EllResidue(2, trace_mod_2(E), 3, 0))
            else:
                residues.append(_trace_mod_ell_detail(E, ell, cache))
    if log is not None:
        for r in residues:
            log(r.log_line())
    r, L = crt_combine([(res.residue, res.ell) for res in residues])
    t = r if 2 * r <= L else r - L
    if t * t > 4 * q:
        raise CountError("CRT trace %d outside the Hasse bound" % t)
    return CountResult(E, q + 1 - t, t, "schoof", time.perf_counter() - t0,
                       {"plan": plan.primes, "residues": [(x.ell, x.residue) for x in residues]})
