"""Zeta functions: the elliptic formula, counts <-> rational function, and
brute-force counting on affine varieties."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from sympy import Poly as SymPoly, QQ, factorint, symbols

from .ffield import FieldCtx, field_make, parse_element


def _trim(c: Sequence[int]) -> tuple:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


_T = symbols("t")


@dataclass(frozen=True)
class ZetaFn:
    """P1(t) / P2(t) with integer coefficients (lowest degree first)."""

    num: tuple
    den: tuple

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if any(not isinstance(c, int) for c in num + den):
            raise TypeError("zeta coefficients must be integers")
        if num[0] != 1 or den[0] != 1:
            raise ValueError("numerator and denominator must have constant term 1")
        g = SymPoly(list(reversed(num)), _T, domain=QQ).gcd(SymPoly(list(reversed(den)), _T, domain=QQ))
        if g.degree() > 0:
            raise ValueError("numerator and denominator are not coprime")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def degree(self) -> int:
        return len(self.num) + len(self.den) - 2

    def series(self, K: int) -> list:
        """Taylor coefficients z_0..z_K of num/den."""
        z = []
        for k in range(K + 1):
            v = self.num[k] if k < len(self.num) else 0
            for i in range(1, min(k, len(self.den) - 1) + 1):
                v -= self.den[i] * z[k - i]
            z.append(v)
        return z

    def __str__(self):
        return "(%s) / (%s)" % (_fmt(self.num), _fmt(self.den))


def _fmt(c: Sequence[int]) -> str:
    terms = []
    for i, a in enumerate(c):
        if a == 0 and len(c) > 1:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else "t^%d" % i)
        if mono and abs(a) == 1:
            s = ("-" if a < 0 else "+") + mono
        else:
            s = "%+d%s" % (a, mono)
        terms.append(s)
    out = "".join(terms)
    return out[1:] if out.startswith("+") else out


@dataclass
class CountSeq:
    counts: list
    ctx: Optional[FieldCtx] = None

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, k):
        return self.counts[k]

    def __iter__(self):
        return iter(self.counts)


def zeta_elliptic(q: int, t: int) -> ZetaFn:
    """(1 - t T + q T^2) / ((1 - T)(1 - q T))."""
    if t * t > 4 * q:
        raise ValueError("trace %d violates the Hasse bound for q = %d" % (t, q))
    return ZetaFn((1, -t, q), (1, -(q + 1), q))


def _power_sums(P: Sequence[int], K: int) -> list:
    # P = prod(1 - g t); returns s_1..s_K with s_k = sum g^k
    s = [0] * (K + 1)
    for k in range(1, K + 1):
        v = -k * (P[k] if k < len(P) else 0)
        for i in range(1, min(k, len(P))):
            v -= P[i] * s[k - i]
        s[k] = v
    return s[1:]


def zeta_to_counts(Z: ZetaFn, K: int, ctx: Optional[FieldCtx] = None) -> CountSeq:
    if K < 1:
        raise ValueError("K must be at least 1")
    sn, sd = _power_sums(Z.num, K), _power_sums(Z.den, K)
    return CountSeq([b - a for a, b in zip(sn, sd)], ctx)


def _zeta_series(counts: Sequence[int]) -> list:
    # exp(sum N_k t^k / k): k z_k = sum_{i=1}^k N_i z_{k-i}
    z = [Fraction(1)]
    for k in range(1, len(counts) + 1):
        z.append(sum(counts[i - 1] * z[k - i] for i in range(1, k + 1)) / k)
    return z


def _solve(rows: list, rhs: list) -> Optional[list]:
    """Exact solution of an overdetermined consistent system, else None."""
    n = len(rows[0]) if rows else 0
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != 0 for row in M[r:]):
        return None
    if len(piv_cols) < n:
        return None  # underdetermined: a smaller degree fits
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][-1]
    return x


def counts_to_zeta(seq, degree_bound: int) -> ZetaFn:
    """The rational function of smallest total degree <= degree_bound whose
    exp-log series reproduces the given counts N_1..N_K."""
    counts = list(seq)
    K = len(counts)
    if K < 2 * degree_bound + 1:
        raise ValueError("need at least 2*degree_bound + 1 counts, got %d" % K)
    z = _zeta_series(counts)
    for n in range(degree_bound + 1):
        for a2 in range(n + 1):
            a1 = n - a2
            # coefficients a1+1..K of P2 * Z vanish; unknowns P2[1..a2]
            rows = [[z[k - j] if k - j >= 0 else 0 for j in range(1, a2 + 1)]
                    for k in range(a1 + 1, K + 1)]
            rhs = [-z[k] for k in range(a1 + 1, K + 1)]
            if a2 == 0:
                if any(rhs):
                    continue
                sol = []
            else:
                sol = _solve(rows, rhs)
                if sol is None:
                    continue
            P2 = [Fraction(1)] + sol
            P1 = [sum(P2[j] * z[k - j] for j in range(min(k, a2) + 1)) for k in range(a1 + 1)]
            if any(c.denominator != 1 for c in P1 + P2):
                continue
            if (a1 and P1[-1] == 0) or (a2 and P2[-1] == 0):
                continue
            try:
                return ZetaFn(tuple(int(c) for c in P1), tuple(int(c) for c in P2))
            except ValueError:
                continue
    raise ValueError("no rational function of total degree <= %d fits the counts" % degree_bound)


def bombieri_bound(a: int, n: int, m: int) -> int:
    """Upper bound (4a + 9)^(n + m) on deg P1 + deg P2 for m equations of
    degree <= a in n variables."""
    return (4 * a + 9) ** (n + m)


@dataclass
class WeilReport:
    roots: list = field(default_factory=list)   # (kind, modulus, weight s, rel. deviation)
    flagged: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.flagged


def weil_modulus_check(Z: ZetaFn, q: int, dim: Optional[int] = None, tol: float = 1e-6) -> WeilReport:
    """Compare the modulus of every reciprocal root with the nearest q^(s/2).

    Advisory only: never raises on a deviation.
    """
    report = WeilReport()
    smax = None if dim is None else 2 * dim
    for kind, P in (("numerator", Z.num), ("denominator", Z.den)):
        if len(P) < 2:
            continue
        # reciprocal roots of P(t) are the roots of t^deg P(1/t)
        for g in np.roots([float(c) for c in P]):
            mod = abs(g)
            s = round(2 * math.log(mod) / math.log(q)) if mod > 0 else 0
            if smax is not None:
                s = min(max(s, 0), smax)
            target = q ** (s / 2)
            dev = abs(mod - target) / target
            entry = (kind, complex(g), mod, s, dev)
            report.roots.append(entry)
            if dev > tol:
                report.flagged.append(entry)
    return report


# ---------------------------------------------------------------------------
# brute-force counting on affine varieties

BRUTE_GUARD = 2 ** 26


@dataclass
class Variety:
    """Affine variety f_1 = ... = f_m = 0 in n variables over ctx.

    Each polynomial is a list of (coefficient, exponent tuple) monomials.
    """

    ctx: FieldCtx
    nvars: int
    polys: list

    @property
    def max_degree(self) -> int:
        return max((sum(e) for f in self.polys for _, e in f), default=0)


def parse_variety(text: str) -> Variety:
    """Parse ``"p,d[,modulus] ; nvars ; poly1 | poly2"``.

    Monomials are ``coef:e1,...,en`` separated by ``+`` or whitespace; the
    coefficient uses the field element format (``;``-free).
    """
    parts = [s.strip() for s in text.split(";")]
    if len(parts) not in (2, 3):
        raise ValueError("variety text needs 'field ; nvars ; polys'")
    fparts = [int(s) for s in parts[0].split(",")]
    p = fparts[0]
    d = fparts[1] if len(fparts) > 1 else 1
    modulus = fparts[2:] or None
    ctx = field_make(p, d, modulus, rng=random.Random(0))
    n = int(parts[1])
    polys = []
    if len(parts) == 3 and parts[2]:
        for ptext in parts[2].split("|"):
            monos = []
            for tok in ptext.replace("+", " ").split():
                coef, _, exps = tok.partition(":")
                e = tuple(int(x) for x in exps.split(",")) if exps else (0,) * n
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError("bad exponent vector in %r" % tok)
                monos.append((parse_element(ctx, coef), e))
            polys.append(monos)
    return Variety(ctx, n, polys)


class _IndexedField:
    """F_Q with elements indexed 0..Q-1 by base-p digits; log tables for numpy."""

    def __init__(self, F: FieldCtx):
        self.F = F
        p, D, Q = F.p, F.d, F.q
        self.p, self.D, self.Q = p, D, Q
        self.weights = np.array([p ** i for i in range(D)], dtype=np.int64)
        g = self._primitive()
        # exp table by blocks: next block = previous block times g^B (an F_p-linear map)
        B = min(Q - 1, 1 << 12)
        first, cur = [], F.one
        for _ in range(B):
            first.append(self.index(cur))
            cur = F.mul(cur, g)
        gB = cur
        exp = np.empty(Q - 1, dtype=np.int64)
        exp[:B] = first
        if B < Q - 1:
            mat = np.array([list(F.coeffs(F.mul(self.raw(p ** i), gB))) for i in range(D)], dtype=np.int64)
            pos = B
            while pos < Q - 1:
                take = min(B, Q - 1 - pos)
                digits = self.digits(exp[pos - B:pos - B + take])
                exp[pos:pos + take] = ((digits @ mat) % p) @ self.weights
                pos += take
        self.exp = exp
        self.log = np.zeros(Q, dtype=np.int64)
        self.log[exp] = np.arange(Q - 1, dtype=np.int64)

    def _primitive(self):
        F, Q = self.F, self.Q
        if Q == 2:
            return F.one
        primes = list(factorint(Q - 1))
        for i in range(1, Q):
            g = self.raw(i)
            if all(F.pow(g, (Q - 1) // r) != F.one for r in primes):
                return g
        raise AssertionError("no primitive element")

    def index(self, raw) -> int:
        return sum(c * self.p ** i for i, c in enumerate(self.F.coeffs(raw)))

    def raw(self, idx: int):
        cs = [(idx // self.p ** i) % self.p for i in range(self.D)]
        return self.F.from_coeffs(cs)

    def digits(self, idx: np.ndarray) -> np.ndarray:
        return (idx[:, None] // self.weights[None, :]) % self.p

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a ^ b
        return ((self.digits(a) + self.digits(b)) % self.p) @ self.weights

    def mono(self, coef_idx: int, exps, cols: np.ndarray) -> np.ndarray:
        """coef * prod x_i^e_i on rows of element indices."""
        Q1 = self.Q - 1
        if coef_idx == 0:
            return np.zeros(cols.shape[0], dtype=np.int64)
        acc = np.full(cols.shape[0], int(self.log[coef_idx]), dtype=np.int64)
        alive = np.ones(cols.shape[0], dtype=bool)
        for i, e in enumerate(exps):
            if e:
                x = cols[:, i]
                alive &= x != 0
                acc = (acc + e * self.log[x]) % Q1
        out = self.exp[acc]
        out[~alive] = 0
        return out


def _embedding(base: FieldCtx, big: _IndexedField):
    """Index in F_{q^k} of each F_q raw, via a root of the base modulus."""
    if base.d == 1:
        return lambda raw: big.index(big.F.from_int(raw))
    # evaluate the base modulus (over F_p) on all elements of the big field
    idx = np.arange(big.Q, dtype=np.int64)
    acc = np.zeros(big.Q, dtype=np.int64)
    for c in reversed(base.modulus):
        prod = np.zeros(big.Q, dtype=np.int64)
        nz = (acc != 0) & (idx != 0)
        prod[nz] = big.exp[(big.log[acc[nz]] + big.log[idx[nz]]) % (big.Q - 1)]
        acc = big.add(prod, np.full(big.Q, big.index(big.F.from_int(c)), dtype=np.int64))
    root = big.raw(int(np.flatnonzero(acc == 0)[0]))
    F = big.F

    def embed(raw):
        v, power = F.zero, F.one
        for c in base.coeffs(raw):
            v = F.add(v, F.smul(power, c))
            power = F.mul(power, root)
        return big.index(v)
    return embed


def brute_force_variety_count(variety: Variety, k: int = 1, guard: int = BRUTE_GUARD,
                              chunk: int = 1 << 18) -> int:
    """Number of points of the variety in F_{q^k}^n, by full enumeration."""
    base = variety.ctx
    n = variety.nvars
    Q = base.q ** k
    total = Q ** n
    if total > guard:
        raise ValueError("enumeration of %d points exceeds the guard %d" % (total, guard))
    if not variety.polys:
        return total
    big_ctx = base if k == 1 else field_make(base.p, base.d * k, rng=random.Random(k))
    big = _IndexedField(big_ctx)
    embed = (lambda raw: big.index(raw)) if k == 1 else _embedding(base, big)
    polys = [[(embed(c.rep), e) for c, e in f] for f in variety.polys]
    count = 0
    for start in range(0, total, chunk):
        ids = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = np.empty((ids.size, n), dtype=np.int64)
        rest = ids
        for i in range(n):
            cols[:, i] = rest % Q
            rest = rest // Q
        ok = np.ones(ids.size, dtype=bool)
        for f in polys:
            val = np.zeros(ids.size, dtype=np.int64)
            for c, e in f:
                val = big.add(val, big.mono(c, e, cols))
            ok &= val == 0
        count += int(np.count_nonzero(ok))
    return count


def variety_counts(variety: Variety, K: int, guard: int = BRUTE_GUARD) -> CountSeq:
    return CountSeq([brute_force_variety_count(variety, k, guard) for k in range(1, K + 1)], variety.ctx)
