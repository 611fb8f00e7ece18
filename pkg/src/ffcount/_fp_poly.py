"""Dense polynomial kernel over a prime field F_p.

Polynomials are plain lists of ints in ``[0, p)``, lowest degree first, with
no trailing zeros; the zero polynomial is ``[]``.  Everything here is a free
function taking ``p`` explicitly so the kernel can be shared by the field
module (extension-field arithmetic, irreducibility tests) and the polynomial
ring module.
"""

from __future__ import annotations

KARATSUBA_CUTOFF = 32
# Products whose shorter factor is below this use schoolbook; above it the
# packed-integer product is used (see ``mul``).
KRONECKER_CUTOFF = 8


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: list[int]) -> int:
    return len(a) - 1


def add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def neg(a: list[int], p: int) -> list[int]:
    return [(-c) % p for c in a]


def scale(a: list[int], c: int, p: int) -> list[int]:
    c %= p
    if c == 0:
        return []
    return trim([(x * c) % p for x in a])


def schoolbook(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return trim([c % p for c in out])


def _raw_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _raw_sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _karatsuba_raw(a, b, cutoff):
    # Unreduced integer product; callers reduce once at the end.
    n = max(len(a), len(b))
    if min(len(a), len(b)) <= cutoff:
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba_raw(a0, b0, cutoff)
    z2 = _karatsuba_raw(a1, b1, cutoff)
    z1 = _karatsuba_raw(_raw_add(a0, a1), _raw_add(b0, b1), cutoff)
    z1 = _raw_sub(_raw_sub(z1, z0), z2)
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] += c
    for i, c in enumerate(z1):
        out[i + h] += c
    for i, c in enumerate(z2):
        out[i + 2 * h] += c
    return out


def karatsuba(a: list[int], b: list[int], p: int, cutoff: int = KARATSUBA_CUTOFF) -> list[int]:
    """Karatsuba product; schoolbook below ``cutoff`` coefficients."""
    if not a or not b:
        return []
    return trim([c % p for c in _karatsuba_raw(a, b, max(cutoff, 1))])


def _slot_bytes(n: int, p: int) -> int:
    bound = n * (p - 1) ** 2
    return (bound.bit_length() + 8) // 8


def pack(a: list[int], nbytes: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in a), "little")


def unpack(v: int, nbytes: int, count: int) -> list[int]:
    raw = v.to_bytes(nbytes * count, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(count)]


def kronecker(a: list[int], b: list[int], p: int) -> list[int]:
    """Product via Kronecker substitution into one big-integer multiplication."""
    if not a or not b:
        return []
    nb = _slot_bytes(min(len(a), len(b)), p)
    count = len(a) + len(b) - 1
    prod = pack(a, nb) * pack(b, nb)
    return trim([c % p for c in unpack(prod, nb, count)])


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRONECKER_CUTOFF:
        return schoolbook(a, b, p)
    return kronecker(a, b, p)


def sqr(a: list[int], p: int) -> list[int]:
    if len(a) < KRONECKER_CUTOFF:
        return schoolbook(a, a, p)
    nb = _slot_bytes(len(a), p)
    v = pack(a, nb)
    return trim([c % p for c in unpack(v * v, nb, 2 * len(a) - 1)])


def divmod_(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    inv_lead = pow(b[-1], -1, p)
    r = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - len(b), -1, -1):
        c = (r[k + db] * inv_lead) % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def mod(a: list[int], b: list[int], p: int) -> list[int]:
    return divmod_(a, b, p)[1]


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def xgcd(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    c = pow(r0[-1], -1, p)
    return scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)


def derivative(a: list[int], p: int) -> list[int]:
    return trim([(i * a[i]) % p for i in range(1, len(a))])


def evaluate(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def powmod(base: list[int], n: int, m: list[int], p: int) -> list[int]:
    """``base**n mod m`` by left-to-right square and multiply."""
    if n < 0:
        raise ValueError("negative exponent")
    result = [1] if len(m) > 1 else []
    base = mod(base, m, p)
    for bit in bin(n)[2:]:
        result = mod(sqr(result, p), m, p)
        if bit == "1":
            result = mod(mul(result, base, p), m, p)
    return result


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test: x^(p^d) = x mod f and gcd(x^(p^(d/r)) - x, f) = 1 for primes r | d."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    f = monic(f, p)
    x = [0, 1]

    def frob_power(k):
        y = x
        for _ in range(k):
            y = powmod(y, p, f, p)
        return y

    if sub(frob_power(d), x, p):
        return False
    r, n, primes = 2, d, []
    while r * r <= n:
        if n % r == 0:
            primes.append(r)
            while n % r == 0:
                n //= r
        r += 1
    if n > 1:
        primes.append(n)
    for r in primes:
        g = gcd(sub(frob_power(d // r), x, p), f, p)
        if len(g) > 1:
            return False
    return True
