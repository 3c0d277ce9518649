"""Sparse multivariate polynomials over the integers.

A polynomial is a dict mapping exponent tuples (all of one length) to nonzero
ints.  These are the workhorses behind gcd, resultants and factorization; the
public ``MultiPoly`` type converts to and from this form, lifting the
coefficient variable t to an ordinary variable when needed.
"""

from __future__ import annotations

import heapq
from math import gcd

# --- basic arithmetic ---------------------------------------------------------


def zconst(c: int, nvars: int) -> dict:
    return {(0,) * nvars: c} if c else {}


def zadd(p: dict, q: dict) -> dict:
    if len(p) < len(q):
        p, q = q, p
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def zneg(p: dict) -> dict:
    return {e: -c for e, c in p.items()}


def zsub(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def zscale(p: dict, c: int) -> dict:
    if c == 0:
        return {}
    if c == 1:
        return p
    return {e: v * c for e, v in p.items()}


def zmul(p: dict, q: dict) -> dict:
    if not p or not q:
        return {}
    if len(p) < len(q):
        p, q = q, p
    out: dict = {}
    get = out.get
    for e2, c2 in q.items():
        for e1, c1 in p.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def zpow(p: dict, k: int, nvars: int) -> dict:
    out = zconst(1, nvars)
    base = p
    while k:
        if k & 1:
            out = zmul(out, base)
        k >>= 1
        if k:
            base = zmul(base, base)
    return out


def zmul_monomial(p: dict, m: tuple, c: int = 1) -> dict:
    return {tuple(a + b for a, b in zip(e, m)): v * c for e, v in p.items()}


# --- structure ---------------------------------------------------------------


def zdeg(p: dict, i: int) -> int:
    """Degree in variable i (-1 for the zero polynomial)."""
    return max((e[i] for e in p), default=-1)


def zmindeg(p: dict, i: int) -> int:
    return min((e[i] for e in p), default=0)


def ztotal(p: dict) -> int:
    return max((sum(e) for e in p), default=-1)


def zvars(p: dict) -> set:
    out = set()
    for e in p:
        for i, a in enumerate(e):
            if a:
                out.add(i)
    return out


def zis_const(p: dict) -> bool:
    return all(not any(e) for e in p)


def zconst_value(p: dict) -> int:
    if not p:
        return 0
    ((e, c),) = p.items()
    return c


def zcoeffs_in(p: dict, i: int) -> dict:
    """Map k -> coefficient of x_i^k (a polynomial with x_i exponent zeroed)."""
    out: dict = {}
    for e, c in p.items():
        k = e[i]
        f = e[:i] + (0,) + e[i + 1:]
        out.setdefault(k, {})[f] = c
    return out


def zfrom_coeffs(cs: dict, i: int) -> dict:
    out = {}
    for k, q in cs.items():
        for e, c in q.items():
            out[e[:i] + (k,) + e[i + 1:]] = c
    return out


def zlc_in(p: dict, i: int) -> dict:
    d = zdeg(p, i)
    return {e[:i] + (0,) + e[i + 1:]: c for e, c in p.items() if e[i] == d}


def zleading(p: dict):
    """Lex-leading (exponent, coefficient)."""
    e = max(p)
    return e, p[e]


def zcontent(p: dict) -> int:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def zprimitive(p: dict) -> dict:
    """Divide by integer content and make the lex-leading coefficient positive."""
    if not p:
        return p
    g = zcontent(p)
    if p[max(p)] < 0:
        g = -g
    if g == 1:
        return p
    return {e: c // g for e, c in p.items()}


def zmonomial_content(p: dict) -> tuple:
    it = iter(p)
    m = list(next(it))
    for e in it:
        for i, a in enumerate(e):
            if a < m[i]:
                m[i] = a
    return tuple(m)


def zdiv_monomial(p: dict, m: tuple) -> dict:
    return {tuple(a - b for a, b in zip(e, m)): c for e, c in p.items()}


def zderiv(p: dict, i: int) -> dict:
    out = {}
    for e, c in p.items():
        k = e[i]
        if k:
            out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
    return out


def zeval(p: dict, i: int, v: int) -> dict:
    """Substitute x_i = v (an integer); the result keeps the variable slot at 0."""
    out: dict = {}
    pw = {}
    for e, c in p.items():
        k = e[i]
        if k not in pw:
            pw[k] = v ** k
        f = e[:i] + (0,) + e[i + 1:]
        w = out.get(f, 0) + c * pw[k]
        if w:
            out[f] = w
        else:
            out.pop(f, None)
    return out


def zdrop(p: dict, i: int) -> dict:
    """Remove slot i, assuming the variable does not occur."""
    return {e[:i] + e[i + 1:]: c for e, c in p.items()}


def zinsert(p: dict, i: int) -> dict:
    return {e[:i] + (0,) + e[i:]: c for e, c in p.items()}


def zpermute(p: dict, perm) -> dict:
    """New slot k holds old slot perm[k]."""
    return {tuple(e[j] for j in perm): c for e, c in p.items()}


# --- division ----------------------------------------------------------------


def zdiv_exact(p: dict, q: dict):
    """Return p / q if q divides p over Z, else None."""
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    if not p:
        return {}
    if len(q) == 1:
        ((m, c),) = q.items()
        out = {}
        for e, v in p.items():
            f = tuple(a - b for a, b in zip(e, m))
            if min(f) < 0 or v % c:
                return None
            out[f] = v // c
        return out
    lq, cq = zleading(q)
    rest = [(e, c) for e, c in q.items() if e != lq]
    rem = dict(p)
    heap = [tuple(-a for a in e) for e in rem]
    heapq.heapify(heap)
    quo = {}
    while heap:
        key = heapq.heappop(heap)
        e = tuple(-a for a in key)
        c = rem.get(e)
        if not c:
            continue
        f = tuple(a - b for a, b in zip(e, lq))
        if min(f) < 0 or c % cq:
            return None
        k = c // cq
        quo[f] = k
        del rem[e]
        for e2, c2 in rest:
            g = tuple(a + b for a, b in zip(f, e2))
            v = rem.get(g, 0) - k * c2
            if v:
                if g not in rem:
                    heapq.heappush(heap, tuple(-a for a in g))
                rem[g] = v
            else:
                rem.pop(g, None)
    return quo


def zprem(p: dict, q: dict, i: int) -> dict:
    """Pseudo-remainder of p by q with respect to variable i."""
    P = zcoeffs_in(p, i)
    Q = zcoeffs_in(q, i)
    dq = max(Q)
    lc = Q[dq]
    if not P or max(P) < dq:
        return p
    n = max(P) - dq + 1
    while P and max(P) >= dq:
        d = max(P)
        lr = P.pop(d)
        newP = {k: zmul(lc, c) for k, c in P.items()}
        for k, c in Q.items():
            if k == dq:
                continue
            kk = k + d - dq
            v = zsub(newP.get(kk, {}), zmul(lr, c))
            if v:
                newP[kk] = v
            else:
                newP.pop(kk, None)
        P = newP
        n -= 1
    if n > 0 and P:
        nv = len(next(iter(p)))
        f = zpow(lc, n, nv)
        P = {k: zmul(c, f) for k, c in P.items()}
    return zfrom_coeffs(P, i)


# --- gcd ---------------------------------------------------------------------


def zcontent_in(p: dict, i: int) -> dict:
    """Content of p viewed as a polynomial in x_i, with positive leading coefficient."""
    cs = sorted(zcoeffs_in(p, i).values(), key=len)
    nv = len(next(iter(p)))
    g = cs[0]
    for c in cs[1:]:
        if zis_const(g):
            break
        g = zgcd(g, c)
    if zis_const(g):
        return zconst(zcontent(p), nv)
    return _normalize_sign(g)


def zgcd(p: dict, q: dict) -> dict:
    """Gcd over Z, normalized with positive lex-leading coefficient."""
    if not p:
        return _normalize_sign(q)
    if not q:
        return _normalize_sign(p)
    nv = len(next(iter(p)))
    if zis_const(p) or zis_const(q):
        return zconst(gcd(zcontent(p), zcontent(q)), nv)
    if p == q:
        return _normalize_sign(p)
    # monomial parts
    mp, mq = zmonomial_content(p), zmonomial_content(q)
    m = tuple(min(a, b) for a, b in zip(mp, mq))
    if any(mp) or any(mq):
        p = zdiv_monomial(p, mp)
        q = zdiv_monomial(q, mq)
        g = zgcd(p, q)
        return zmul_monomial(g, m)
    vp, vq = zvars(p), zvars(q)
    only_p = vp - vq
    if only_p:
        i = min(only_p)
        return zgcd(zcontent_in(p, i), q)
    only_q = vq - vp
    if only_q:
        i = min(only_q)
        return zgcd(p, zcontent_in(q, i))
    if len(p) == 1 or len(q) == 1:
        # a monomial with no monomial part is a constant; handled above
        return zconst(gcd(zcontent(p), zcontent(q)), nv)
    # heuristic first: cheap and usually right
    h = _heugcd(p, q, nv)
    if h is not None:
        return h
    i = min(vp, key=lambda k: (max(zdeg(p, k), zdeg(q, k)), k))
    cp, cq = zcontent_in(p, i), zcontent_in(q, i)
    pp = zdiv_exact(p, cp)
    qq = zdiv_exact(q, cq)
    cg = zgcd(cp, cq)
    if zdeg(pp, i) < zdeg(qq, i):
        pp, qq = qq, pp
    while True:
        r = zprem(pp, qq, i)
        if not r:
            break
        if zdeg(r, i) == 0:
            return _normalize_sign(cg)
        pp, qq = qq, _primitive_in(r, i)
    g = _primitive_in(qq, i)
    return _normalize_sign(zmul(cg, g))


def _primitive_in(p: dict, i: int) -> dict:
    c = zcontent_in(p, i)
    out = zdiv_exact(p, c)
    return zprimitive(out)


def _normalize_sign(p: dict) -> dict:
    if p and p[max(p)] < 0:
        return zneg(p)
    return p


def _heugcd(p: dict, q: dict, nv: int):
    """Heuristic gcd by evaluation at a large integer in one variable, recursively.

    Returns None when the heuristic cannot certify its answer; the caller then
    runs the PRS route.
    """
    vp = sorted(zvars(p) | zvars(q))
    if len(vp) != 1:
        return _heugcd_multi(p, q, nv)
    i = vp[0]
    return _heugcd_uni(p, q, nv, i)


def _heugcd_uni(p, q, nv, i):
    a = [0] * (zdeg(p, i) + 1)
    for e, c in p.items():
        a[e[i]] = c
    b = [0] * (zdeg(q, i) + 1)
    for e, c in q.items():
        b[e[i]] = c
    g = dup_gcd_int(a[::-1], b[::-1])
    out = {}
    d = len(g) - 1
    for k, c in enumerate(g):
        if c:
            e = [0] * nv
            e[i] = d - k
            out[tuple(e)] = c
    return _normalize_sign(out)


def _heugcd_multi(p, q, nv):
    return None


# --- univariate dense integer polynomials (high-to-low coefficient lists) -----


def dup_strip(f):
    i = 0
    while i < len(f) and f[i] == 0:
        i += 1
    return f[i:]


def dup_add(f, g):
    n = max(len(f), len(g))
    f = [0] * (n - len(f)) + list(f)
    g = [0] * (n - len(g)) + list(g)
    return dup_strip([a + b for a, b in zip(f, g)])


def dup_sub(f, g):
    return dup_add(f, [-c for c in g])


def dup_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def dup_content(f):
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def dup_primitive(f):
    if not f:
        return 0, []
    c = dup_content(f)
    if f[0] < 0:
        c = -c
    return c, [a // c for a in f]


def dup_prem(f, g):
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return list(f)
    r = list(f)
    lc = g[0]
    n = df - dg + 1
    while len(r) - 1 >= dg and r:
        lr = r[0]
        r = [lc * c for c in r]
        for j in range(dg + 1):
            r[j] -= lr * g[j]
        r = dup_strip(r[1:]) if r[0] == 0 else dup_strip(r)
        n -= 1
    return [c * lc ** n for c in r] if n > 0 else r


def dup_divexact(f, g):
    """f / g over Z; None if not exact."""
    if not g:
        raise ZeroDivisionError
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [] if not f else None
    q = []
    lc = g[0]
    for k in range(len(f) - dg):
        c = f[k]
        if c % lc:
            return None
        c //= lc
        q.append(c)
        if c:
            for j in range(1, dg + 1):
                f[k + j] -= c * g[j]
    if any(f[len(f) - dg:]):
        return None
    return q


def dup_gcd_int(f, g):
    """Primitive gcd over Z[x] with positive leading coefficient."""
    f, g = dup_strip(f), dup_strip(g)
    if not f:
        return dup_primitive(g)[1] if g else []
    if not g:
        return dup_primitive(f)[1]
    cf, f = dup_primitive(f)
    cg, g = dup_primitive(g)
    c = gcd(cf, cg)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = dup_prem(f, g)
        f, g = g, (dup_primitive(r)[1] if r else [])
    f = dup_primitive(f)[1]
    return [c * a for a in f]


def dup_deriv(f):
    n = len(f) - 1
    return dup_strip([c * (n - i) for i, c in enumerate(f[:-1])])


def dup_eval(f, x):
    acc = 0
    for c in f:
        acc = acc * x + c
    return acc


def dup_max_norm(f):
    return max((abs(c) for c in f), default=0)
