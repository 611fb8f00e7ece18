"""Point counting below Schoof: Legendre sums, baby-step giant-step with the
quadratic-twist argument, and Cornacchia for curves with known CM."""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from sympy import factorint

from .polyring import crt_combine
from .ecurve import (Curve, OpCounter, format_curve, point_order_in_window,
                     quadratic_twist, random_point, scalar_mul)
from .ffield import (FieldCtx, FieldElement, absolute_trace, field_make, legendre_chi,
                     random_twist_parameter,
                     sqrt_mod)

NAIVE_GUARD = 2 ** 28
# Below this q the twist argument is not guaranteed to isolate the count.
MESTRE_THRESHOLD = 1373


class CountError(RuntimeError):
    pass


@dataclass
class CountResult:
    curve: Curve
    n_points: int
    trace: int
    method: str
    elapsed: float = 0.0
    info: dict = field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.curve.ctx.q

    def __post_init__(self):
        q = self.curve.ctx.q
        if self.n_points != q + 1 - self.trace:
            raise ValueError("n_points and trace disagree")
        if self.trace * self.trace > 4 * q:
            raise ValueError("trace %d violates the Hasse bound for q = %d" % (self.trace, q))

    def to_record(self) -> dict:
        return {
            "q": str(self.q),
            "curve": format_curve(self.curve),
            "method": self.method,
            "n_points": str(self.n_points),
            "trace": str(self.trace),
            "ms": "%d" % round(self.elapsed * 1000),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record())


def _result(E, n, method, t0, **info):
    q = E.ctx.q
    return CountResult(E, n, q + 1 - n, method, time.perf_counter() - t0, info)


def hasse_window(q: int) -> tuple[int, int]:
    r = math.isqrt(4 * q)  # floor(2 sqrt q)
    return q + 1 - r, q + 1 + r


# ---------------------------------------------------------------------------
# naive counting


def _euler_sum_np(p: int, coeffs, chunk: int = 1 << 20) -> int:
    """sum over x in F_p of chi(disc(x)) where disc = h(x)^2 + 4 g(x)."""
    a1, a2, a3, a4, a6 = (int(c) for c in coeffs)
    e = (p - 1) // 2
    total = 0
    for start in range(0, p, chunk):
        x = np.arange(start, min(start + chunk, p), dtype=np.int64)
        g = (x + a2) % p
        g = (g * x + a4) % p
        g = (g * x + a6) % p
        h = (a1 * x + a3) % p
        v = (h * h + 4 * g) % p
        res = np.ones_like(v)
        base = v.copy()
        n = e
        while n:
            if n & 1:
                res = (res * base) % p
            base = (base * base) % p
            n >>= 1
        total += int(np.count_nonzero(res == 1)) - int(np.count_nonzero(res == p - 1))
    return total


def _abs_trace_bit(F: FieldCtx, c) -> int:
    return absolute_trace(FieldElement(F, c))


def count_naive(E: Curve, guard: int = NAIVE_GUARD) -> CountResult:
    """Exact #E(F_q) by sweeping x over F_q."""
    t0 = time.perf_counter()
    F = E.ctx
    q = F.q
    if q > guard:
        raise CountError("q = %d exceeds the naive-count guard %d" % (q, guard))
    if F.p != 2:
        if F.d == 1 and F.p < 2 ** 31:
            s = _euler_sum_np(F.p, (E.a1, E.a2, E.a3, E.a4, E.a6))
        else:
            s = 0
            for x in F.raw_elements():
                h = F.add(F.mul(E.a1, x), E.a3)
                v = F.add(F.mul(h, h), F.smul(E.rhs(x), 4))
                s += legendre_chi(FieldElement(F, v))
        return _result(E, q + 1 + s, "naive", t0)
    # characteristic 2: y^2 + h y = g has one root when h = 0, otherwise two
    # or none according to the trace of g/h^2
    n = 1
    for x in F.raw_elements():
        h = F.add(F.mul(E.a1, x), E.a3)
        if F.is_zero(h):
            n += 1
            continue
        hinv = F.inv(h)
        c = F.mul(E.rhs(x), F.mul(hinv, hinv))
        if _abs_trace_bit(F, c) == 0:
            n += 2
    return _result(E, n, "naive", t0)


# ---------------------------------------------------------------------------
# baby-step giant-step with the quadratic twist


def exact_order(P, annihilators: list[int], counter: Optional[OpCounter] = None) -> int:
    """Order of P given nonzero integers that kill it."""
    g = 0
    for m in annihilators:
        g = math.gcd(g, abs(m))
    if g == 0:
        raise ValueError("need a nonzero annihilator")
    order = g
    for ell, e in factorint(g).items():
        for _ in range(e):
            if scalar_mul(order // ell, P, counter).is_infinity:
                order //= ell
            else:
                break
    return order


def _crt_general(r1: int, m1: int, r2: int, m2: int) -> Optional[tuple[int, int]]:
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    l = m1 // g * m2
    k = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % l, l


def _candidates_in_window(q, L_E, L_T, lo, hi, limit=2):
    """Values N in [lo, hi] with L_E | N and L_T | 2(q+1) - N (at most ``limit``)."""
    sol = _crt_general(0, L_E, (2 * (q + 1)) % L_T, L_T)
    if sol is None:
        return []
    r, M = sol
    first = lo + (r - lo) % M
    out = []
    N = first
    while N <= hi and len(out) < limit:
        out.append(N)
        N += M
    return out


def count_bsgs(E: Curve, rng: Optional[random.Random] = None, max_samples: int = 200,
               guard: int = NAIVE_GUARD) -> CountResult:
    """#E(F_q) from point orders on E and its quadratic twist.

    Random points are drawn alternately on E and on a twist E'.  Each point's
    order is found inside the Hasse window by baby-step giant-step; the lcm
    of orders on E (resp. E') must divide #E (resp. #E' = 2(q+1) - #E).  The
    loop stops once a single value in the window is compatible with both.
    """
    t0 = time.perf_counter()
    F = E.ctx
    q = F.q
    if q < 5:
        raise ValueError("count_bsgs needs q >= 5")
    rng = rng or random.Random()
    lo, hi = hasse_window(q)
    center, radius = q + 1, (hi - lo) // 2
    omega = random_twist_parameter(F, rng)
    T = quadratic_twist(E, omega)
    L_E = L_T = 1
    budget = max_samples if q >= MESTRE_THRESHOLD else min(max_samples, 24)
    ops_per_point = []
    for i in range(budget):
        on_twist = i % 2 == 1
        C = T if on_twist else E
        P = random_point(C, rng)
        counter = OpCounter()
        ann = point_order_in_window(P, center, radius, counter)
        ops_per_point.append(counter.ops)
        if not ann:
            raise CountError("no annihilator of a point in the Hasse window")
        order = exact_order(P, ann)
        if on_twist:
            L_T = math.lcm(L_T, order)
        else:
            L_E = math.lcm(L_E, order)
        cands = _candidates_in_window(q, L_E, L_T, lo, hi)
        if len(cands) == 1:
            return _result(E, cands[0], "bsgs", t0, samples=i + 1, lcm_E=L_E, lcm_twist=L_T,
                           twist=T, ops_per_point=ops_per_point)
        if not cands:
            raise CountError("inconsistent point orders (L_E=%d, L_T=%d)" % (L_E, L_T))
    if q <= guard:
        res = count_naive(E, guard)
        res.method = "bsgs"
        res.info.update(fallback="naive", samples=budget, ops_per_point=ops_per_point)
        res.elapsed = time.perf_counter() - t0
        return res
    raise CountError("no unique count after %d samples" % budget)


# ---------------------------------------------------------------------------
# Cornacchia


def _sqrt_mod_prime_power(a: int, p: int, k: int) -> list[int]:
    """Square roots of a modulo p^k for an odd prime p not dividing a."""
    F = field_make(p)
    x = F(a)
    if legendre_chi(x) != 1:
        return []
    r = int(sqrt_mod(x))
    mod = p
    for _ in range(1, k):
        mod *= p
        # Newton step r <- r - (r^2 - a)/(2r)
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return sorted({r % mod, (-r) % mod})


def _prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError("%d is not a prime power" % q)
    (p, k), = f.items()
    return p, k


def _euclid_stop(m: int, u: int) -> int:
    """Run Euclid on (m, u) and return the first remainder r with r^2 < m."""
    a, b = m, u
    while b * b >= m:
        a, b = b, a % b
    return b


def _cornacchia_primitive(D: int, m: int, roots: list[int]) -> set:
    out = set()
    for u in roots:
        x = _euclid_stop(m, u)
        rest = m - x * x
        if rest <= 0 or rest % D:
            continue
        y = math.isqrt(rest // D)
        if y * y * D == rest and math.gcd(x, y) == 1:
            out.add((x, y))
    return out


def cornacchia(D: int, q: int) -> list[tuple[int, int]]:
    """Solutions (x, y), x >= 0, y >= 1, of x^2 + D y^2 = 4q with gcd(x, y) in {1, 2}.

    ``q`` must be an odd prime power coprime to ``D``.  Raises ValueError when
    -D is not a square modulo q (then there is no solution at all).  When -D
    is a square mod q but not mod 4, only the gcd-2 solutions can exist.
    """
    if D <= 0:
        raise ValueError("D must be positive")
    p, k = _prime_power(q)
    if p == 2:
        raise ValueError("cornacchia requires odd q")
    if D % p == 0:
        raise ValueError("D must be coprime to q")
    roots_q = _sqrt_mod_prime_power((-D) % q, p, k)
    roots_4 = [u for u in range(4) if (u * u + D) % 4 == 0]
    if not roots_q:
        raise ValueError("-%d is not a square modulo %d" % (D, q))
    roots_4q = sorted({crt_combine([(a, 4), (b, q)])[0] for a in roots_4 for b in roots_q})
    sols = _cornacchia_primitive(D, 4 * q, roots_4q)
    # gcd-2 solutions: (2x, 2y) with x^2 + D y^2 = q
    sols |= {(2 * x, 2 * y) for x, y in _cornacchia_primitive(D, q, roots_q)}
    if D == 1:
        # x + iy and y + ix come from the same pair of roots +-u
        sols |= {(y, x) for x, y in sols if x > 0}
    for x, y in sols:
        assert x * x + D * y * y == 4 * q
    return sorted(sols)


def cornacchia_exhaustive(D: int, q: int) -> list[tuple[int, int]]:
    """Reference search over y for the same solution set as :func:`cornacchia`."""
    out = []
    y = 1
    while D * y * y <= 4 * q:
        rest = 4 * q - D * y * y
        x = math.isqrt(rest)
        if x * x == rest and math.gcd(x, y) in (1, 2):
            out.append((x, y))
        y += 1
    return sorted(out)


def count_cm(E: Curve, D: int, rng: Optional[random.Random] = None,
             max_points: int = 50) -> CountResult:
    """#E(F_q) for a curve with CM by discriminant -D.

    The trace is one of the +-x from Cornacchia; the candidates are filtered by
    checking (q + 1 - t) P = O on random points.
    """
    t0 = time.perf_counter()
    q = E.ctx.q
    rng = rng or random.Random()
    sols = cornacchia(D, q)
    alive = sorted({s * x for x, _ in sols for s in (1, -1)})
    for _ in range(max_points):
        if len(alive) <= 1:
            break
        P = random_point(E, rng)
        alive = [t for t in alive if scalar_mul(q + 1 - t, P).is_infinity]
    if not alive:
        raise CountError("no trace candidate survives; E has no CM by -%d" % D)
    if len(alive) > 1:
        raise CountError("ambiguous traces after %d points: %s" % (max_points, alive))
    # a single candidate left without testing still needs a check
    t = alive[0]
    P = random_point(E, rng)
    if not scalar_mul(q + 1 - t, P).is_infinity:
        raise CountError("no trace candidate survives; E has no CM by -%d" % D)
    return _result(E, q + 1 - t, "cm", t0, candidates=sorted({s * x for x, _ in sols for s in (1, -1)}))
