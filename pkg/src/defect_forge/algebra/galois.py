"""Dense univariate polynomials over GF(p) and factorization of integer polynomials.

Polynomials are lists of coefficients from the highest degree down.  The
integer factorizer is Zassenhaus' method: factor modulo a small prime, lift
the factors with multifactor Hensel lifting, then recombine subsets of lifted
factors and confirm every candidate by exact division.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from ..errors import ResourceLimit
from .zpoly import (
    dup_content,
    dup_deriv,
    dup_divexact,
    dup_gcd_int,
    dup_max_norm,
    dup_mul,
    dup_primitive,
    dup_strip,
)

# --- GF(p) arithmetic ---------------------------------------------------------


def gf_norm(f, p):
    return dup_strip([c % p for c in f])


def gf_add(f, g, p):
    n = max(len(f), len(g))
    f = [0] * (n - len(f)) + list(f)
    g = [0] * (n - len(g)) + list(g)
    return dup_strip([(a + b) % p for a, b in zip(f, g)])


def gf_sub(f, g, p):
    return gf_add(f, [(-c) % p for c in g], p)


def gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return dup_strip([c % p for c in out])


def gf_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("GF(p) division by zero")
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [], f
    inv = pow(g[0], -1, p)
    q = []
    for k in range(len(f) - dg):
        c = f[k] * inv % p
        q.append(c)
        if c:
            for j in range(1, dg + 1):
                f[k + j] = (f[k + j] - c * g[j]) % p
    r = dup_strip(f[len(f) - dg:]) if dg else []
    return q, r


def gf_rem(f, g, p):
    return gf_divmod(f, g, p)[1]


def gf_quo(f, g, p):
    return gf_divmod(f, g, p)[0]


def gf_monic(f, p):
    if not f or f[0] == 1:
        return list(f)
    inv = pow(f[0], -1, p)
    return [c * inv % p for c in f]


def gf_gcd(f, g, p):
    while g:
        f, g = g, gf_rem(f, g, p)
    return gf_monic(f, p)


def gf_gcdex(f, g, p):
    """Return (s, t, h) with s*f + t*g = h = gcd(f, g) monic."""
    s0, s1 = [1], []
    t0, t1 = [], [1]
    r0, r1 = list(f), list(g)
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if not r0:
        return s0, t0, r0
    inv = pow(r0[0], -1, p)
    return ([c * inv % p for c in s0], [c * inv % p for c in t0], [c * inv % p for c in r0])


def gf_pow_mod(f, n, g, p):
    out = [1]
    base = gf_rem(f, g, p)
    while n:
        if n & 1:
            out = gf_rem(gf_mul(out, base, p), g, p)
        n >>= 1
        if n:
            base = gf_rem(gf_mul(base, base, p), g, p)
    return out


def gf_deriv(f, p):
    n = len(f) - 1
    return dup_strip([c * (n - i) % p for i, c in enumerate(f[:-1])])


def gf_is_squarefree(f, p):
    d = gf_deriv(f, p)
    if not d:
        return False
    return len(gf_gcd(f, d, p)) == 1


def gf_ddf(f, p):
    """Distinct-degree factorization of a monic squarefree f."""
    out = []
    x = [1, 0]
    h = x
    i = 1
    while 2 * i <= len(f) - 1:
        h = gf_pow_mod(h, p, f, p)
        g = gf_gcd(f, gf_sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            f = gf_quo(f, g, p)
            h = gf_rem(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def gf_edf(f, d, p, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n <= d:
        return [f]
    e = (p ** d - 1) // 2
    while True:
        r = [rng.randrange(p) for _ in range(2 * d)]
        r = dup_strip(r)
        if len(r) < 2:
            continue
        h = gf_sub(gf_pow_mod(r, e, f, p), [1], p)
        g = gf_gcd(f, h, p)
        if 1 < len(g) < len(f):
            return gf_edf(g, d, p, rng) + gf_edf(gf_quo(f, g, p), d, p, rng)


def gf_factor_sqf(f, p, rng):
    f = gf_monic(f, p)
    out = []
    for g, d in gf_ddf(f, p):
        out.extend(gf_edf(g, d, p, rng))
    out.sort()
    return out


# --- Hensel lifting -------------------------------------------------------------


def _trunc(f, m):
    """Symmetric reduction of the coefficients modulo m."""
    half = m // 2
    out = []
    for c in f:
        c %= m
        if c > half:
            c -= m
        out.append(c)
    return dup_strip(out)


def _div_monic(f, g):
    """Quotient and remainder of f by a monic g over Z."""
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [], dup_strip(f)
    q = []
    for k in range(len(f) - dg):
        c = f[k]
        q.append(c)
        if c:
            for j in range(1, dg + 1):
                f[k + j] -= c * g[j]
    return q, dup_strip(f[len(f) - dg:])


def _sub(f, g):
    n = max(len(f), len(g))
    f = [0] * (n - len(f)) + list(f)
    g = [0] * (n - len(g)) + list(g)
    return dup_strip([a - b for a, b in zip(f, g)])


def _add(f, g):
    return _sub(f, [-c for c in g])


def _hensel_step(m, f, g, h, s, t):
    M = m * m
    e = _trunc(_sub(f, dup_mul(g, h)), M)
    q, r = _div_monic(dup_mul(s, e), h)
    q, r = _trunc(q, M), _trunc(r, M)
    u = _add(dup_mul(t, e), dup_mul(q, g))
    G = _trunc(_add(g, u), M)
    H = _trunc(_add(h, r), M)
    u = _add(dup_mul(s, G), dup_mul(t, H))
    b = _trunc(_sub(u, [1]), M)
    c, d = _div_monic(dup_mul(s, b), H)
    c, d = _trunc(c, M), _trunc(d, M)
    u = _add(dup_mul(t, b), dup_mul(c, G))
    S = _trunc(_sub(s, d), M)
    T = _trunc(_sub(t, u), M)
    return G, H, S, T


def hensel_lift(p, f, factors, lift_exp):
    """Lift monic factors of f mod p to factors mod p**lift_exp; the first carries lc(f)."""
    r = len(factors)
    lc = f[0]
    pl = p ** lift_exp
    if r == 1:
        inv = pow(lc, -1, pl)
        return [_trunc([c * inv for c in f], pl)]
    k = r // 2
    d = math.ceil(math.log2(lift_exp)) if lift_exp > 1 else 0
    g = [lc % p]
    for fi in factors[:k]:
        g = gf_mul(g, fi, p)
    h = list(factors[k])
    for fi in factors[k + 1:]:
        h = gf_mul(h, fi, p)
    s, t, _ = gf_gcdex(g, h, p)
    g, h, s, t = (_trunc(x, p) for x in (g, h, s, t))
    m = p
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return hensel_lift(p, g, factors[:k], lift_exp) + hensel_lift(p, h, factors[k:], lift_exp)


# --- integer factorization ------------------------------------------------------

_SMALL_PRIMES = [
    p for p in range(3, 2000) if all(p % q for q in range(2, int(p ** 0.5) + 1))
]

MAX_SUBSETS = 200_000


def _rng():
    return random.Random(0x5EED)


def zassenhaus(f):
    """Irreducible factors of a primitive squarefree f with positive leading coefficient."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    # rational-root shortcut for quadratics is unnecessary; Zassenhaus handles all degrees
    A = dup_max_norm(f)
    b = f[0]
    B = int(math.isqrt(n + 1) + 1) * (2 ** n) * A * b
    rng = _rng()
    cands = []
    for p in _SMALL_PRIMES:
        if b % p == 0:
            continue
        F = [c % p for c in f]
        if not gf_is_squarefree(F, p):
            continue
        fac = gf_factor_sqf(F, p, rng)
        cands.append((len(fac), p, fac))
        if len(fac) == 1:
            return [f]
        if len(cands) >= 5:
            break
    if not cands:
        raise ResourceLimit("no suitable prime for modular factorization")
    _, p, fac = min(cands)
    lift_exp = 1
    while p ** lift_exp <= 2 * B + 1:
        lift_exp += 1
    lifted = hensel_lift(p, f, fac, lift_exp)
    pl = p ** lift_exp
    indices = list(range(len(lifted)))
    factors = []
    s = 1
    tried = 0
    while 2 * s <= len(indices):
        found = False
        for S in combinations(indices, s):
            tried += 1
            if tried > MAX_SUBSETS:
                raise ResourceLimit("factor recombination exceeded the subset budget")
            # lc trick: scale the candidate by the current leading coefficient
            G = [b]
            for i in S:
                G = dup_mul(G, lifted[i])
            G = _trunc(G, pl)
            if not G:
                continue
            G = dup_primitive(G)[1]
            if f[-1] and G[-1] and f[-1] % G[-1]:
                continue
            q = dup_divexact(f, G)
            if q is None:
                continue
            factors.append(G)
            f = q
            if f[0] < 0:
                f = [-c for c in f]
            b = f[0]
            indices = [i for i in indices if i not in S]
            found = True
            break
        if not found:
            s += 1
    factors.append(f)
    return factors


def sqf_decomposition(f):
    """Yun's algorithm on a primitive f with positive lc: list of (a_i, i)."""
    out = []
    d = dup_deriv(f)
    a = dup_gcd_int(f, d)
    b = dup_divexact(f, a)
    c = dup_divexact(d, a)
    i = 1
    while True:
        db = dup_deriv(b)
        dd = _sub(c, db)
        if not dd:
            if len(b) > 1:
                out.append((b, i))
            break
        a = dup_gcd_int(b, dd)
        if len(a) > 1:
            out.append((a, i))
        b = dup_divexact(b, a)
        c = dup_divexact(dd, a)
        i += 1
        if len(b) == 1:
            break
    return out


def factor_int_univariate(f):
    """Factor f in Z[x]: returns (content, [(factor, multiplicity)]) with positive lcs.

    Powers of x are reported as the factor [1, 0].
    """
    f = dup_strip(f)
    if not f:
        raise ValueError("zero polynomial")
    cont, f = dup_primitive(f)
    out = []
    k = 0
    while f[-1] == 0:
        f = f[:-1]
        k += 1
    if k:
        out.append(([1, 0], k))
    if len(f) > 1:
        for a, m in sqf_decomposition(f):
            for g in zassenhaus(a):
                out.append((g, m))
    return cont, out


def is_content_one(f) -> bool:
    return abs(dup_content(f)) == 1
