"""Factorization of multivariate polynomials over Q and Q(t).

Multivariate inputs are split by monomial content, contents with respect to
single variables and squarefree decomposition; homogeneous pieces are
dehomogenized; what remains goes through a mixed-radix Kronecker substitution
to a univariate integer polynomial whose factors are recombined by exact
division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..errors import InvalidInput, ResourceLimit
from . import zpoly as Z
from .galois import factor_int_univariate
from .multipoly import MultiPoly
from .ratfunc import RatFunc, cnorm

DEGREE_CAP = 24
# one variable needs no Kronecker substitution, so Zassenhaus handles far more
UNIVARIATE_CAP = 120
KRONECKER_CAP = 4000
MAX_RECOMBINATIONS = 200_000


@dataclass
class Factorization:
    unit: object
    factors: list = field(default_factory=list)

    def expand(self, like: MultiPoly) -> MultiPoly:
        acc = MultiPoly.const(like.vars, self.unit)
        for f, m in self.factors:
            acc = acc * f ** m
        return acc

    def irreducible_factors(self) -> list:
        return [f for f, _ in self.factors]


# --- integer multivariate core ------------------------------------------------


def zfactor(p: dict, nvars: int) -> tuple[int, list]:
    """Factor a nonzero Z polynomial: (content with sign, [(primitive factor, mult)])."""
    cont = Z.zcontent(p)
    e, c = Z.zleading(p)
    if c < 0:
        cont = -cont
    p = {k: v // cont for k, v in p.items()}
    out: list = []
    m = Z.zmonomial_content(p)
    for i, k in enumerate(m):
        if k:
            e = [0] * nvars
            e[i] = 1
            out.append(({tuple(e): 1}, k))
    if any(m):
        p = Z.zdiv_monomial(p, m)
    if Z.zis_const(p):
        return cont, out
    for a, mult in _zsqf_decomposition(p):
        for f in _zfactor_sqf(a, nvars):
            out.append((f, mult))
    merged: dict = {}
    order = []
    for f, k in out:
        key = tuple(sorted(f.items()))
        if key not in merged:
            merged[key] = [f, 0]
            order.append(key)
        merged[key][1] += k
    return cont, [tuple(merged[k]) for k in order]


def _zsqf_part(p: dict) -> dict:
    g = p
    for i in sorted(Z.zvars(p)):
        g = Z.zgcd(g, Z.zderiv(p, i))
        if Z.zis_const(g):
            return Z.zprimitive(p)
    q = Z.zdiv_exact(p, g)
    return Z.zprimitive(q)


def _zsqf_decomposition(p: dict) -> list:
    """[(a_k, k)] with p = prod a_k^k, each a_k squarefree, pairwise coprime."""
    out = []
    k = 1
    cur = p
    s = _zsqf_part(cur)
    while not Z.zis_const(cur):
        rest = Z.zdiv_exact(cur, s)
        if Z.zis_const(rest):
            out.append((s, k))
            break
        s2 = _zsqf_part(rest)
        a = Z.zdiv_exact(s, s2)
        if not Z.zis_const(a):
            out.append((Z.zprimitive(a), k))
        cur, s = rest, s2
        k += 1
    return out


def _zfactor_sqf(p: dict, nvars: int) -> list:
    """Irreducible factors of a primitive squarefree p without monomial content."""
    p = Z.zprimitive(p)
    vs = sorted(Z.zvars(p))
    if not vs:
        return []
    if len(vs) == 1:
        return _univariate(p, nvars, vs[0])
    # split off contents with respect to single variables
    for i in vs:
        c = Z.zcontent_in(p, i)
        if not Z.zis_const(c):
            q = Z.zdiv_exact(p, c)
            return _zfactor_sqf(c, nvars) + _zfactor_sqf(q, nvars)
    degs = {sum(e) for e in p}
    if len(degs) == 1:
        return _homogeneous(p, nvars, vs)
    return _kronecker(p, nvars, vs)


def _univariate(p: dict, nvars: int, i: int) -> list:
    d = Z.zdeg(p, i)
    dense = [0] * (d + 1)
    for e, c in p.items():
        dense[d - e[i]] = c
    _, facs = factor_int_univariate(dense)
    out = []
    for f, _m in facs:
        n = len(f) - 1
        q = {}
        for k, c in enumerate(f):
            if c:
                e = [0] * nvars
                e[i] = n - k
                q[tuple(e)] = c
        out.append(Z.zprimitive(q))
    return out


def _homogeneous(p: dict, nvars: int, vs: list) -> list:
    # dehomogenize at the variable of highest degree, factor, rehomogenize
    v = max(vs, key=lambda i: (Z.zdeg(p, i), -i))
    q: dict = {}
    for e, c in p.items():
        f = e[:v] + (0,) + e[v + 1:]
        q[f] = q.get(f, 0) + c
    q = {e: c for e, c in q.items() if c}
    out = []
    _, facs = zfactor(q, nvars)
    for f, _m in facs:
        d = Z.ztotal(f)
        h = {e[:v] + (d - sum(e),) + e[v + 1:]: c for e, c in f.items()}
        out.append(Z.zprimitive(h))
    return out


def _kronecker(p: dict, nvars: int, vs: list) -> list:
    degs = [Z.zdeg(p, i) for i in vs]
    weights = []
    w = 1
    for d in degs:
        weights.append(w)
        w *= d + 1
    top = sum(d * wt for d, wt in zip(degs, weights))
    if top > KRONECKER_CAP:
        raise ResourceLimit(
            f"Kronecker image degree {top} exceeds cap {KRONECKER_CAP}", detail={"degrees": degs}
        )
    dense = [0] * (top + 1)
    for e, c in p.items():
        k = sum(e[i] * wt for i, wt in zip(vs, weights))
        dense[top - k] += c
    _, facs = factor_int_univariate(dense)
    pieces = []
    for f, m in facs:
        pieces.extend([f] * m)

    def lift(f):
        n = len(f) - 1
        q = {}
        for k, c in enumerate(f):
            if not c:
                continue
            deg = n - k
            e = [0] * nvars
            for i, d, wt in reversed(list(zip(vs, degs, weights))):
                digit = deg // wt
                if digit > d:
                    return None
                e[i] = digit
                deg -= digit * wt
            q[tuple(e)] = c
        return q

    from .zpoly import dup_mul

    factors = []
    remaining = p
    idx = list(range(len(pieces)))
    s = 1
    tried = 0
    while 2 * s <= len(idx):
        hit = False
        seen = set()
        for S in combinations(idx, s):
            key = tuple(sorted(tuple(pieces[i]) for i in S))
            if key in seen:
                continue
            seen.add(key)
            tried += 1
            if tried > MAX_RECOMBINATIONS:
                raise ResourceLimit("Kronecker recombination exceeded its budget")
            g = [1]
            for i in S:
                g = dup_mul(g, pieces[i])
            cand = lift(g)
            if cand is None or Z.zis_const(cand):
                continue
            q = Z.zdiv_exact(remaining, cand)
            if q is None:
                continue
            factors.append(Z.zprimitive(cand))
            remaining = q
            idx = [i for i in idx if i not in S]
            hit = True
            break
        if not hit:
            s += 1
    if not Z.zis_const(remaining):
        factors.append(Z.zprimitive(remaining))
    return factors


# --- public API -----------------------------------------------------------------


def factorize(p: MultiPoly, degree_cap: int = DEGREE_CAP) -> Factorization:
    """Factor p over its coefficient field (Q, or Q(t) when t occurs).

    Returns a unit and a deterministically ordered list of (factor, multiplicity);
    each factor is primitive with integer (or Z[t]) coefficients.
    """
    if not isinstance(p, MultiPoly):
        raise InvalidInput("factorize expects a MultiPoly")
    if p.is_zero():
        raise InvalidInput("cannot factor the zero polynomial")
    if degree_cap == DEGREE_CAP and len(p.used_vars()) <= 1 and not p.has_t():
        degree_cap = UNIVARIATE_CAP
    if p.total_degree() > degree_cap:
        raise ResourceLimit(f"total degree {p.total_degree()} exceeds cap {degree_cap}")
    with_t = p.has_t()
    zp, scale = p.to_z(with_t)
    n = p.nvars
    nz = n + (1 if with_t else 0)
    if with_t and max(e[-1] for e in zp) > degree_cap:
        raise ResourceLimit(f"t-degree exceeds cap {degree_cap}")
    _, facs = zfactor(zp, nz)
    factors = []
    for f, m in facs:
        if with_t and all(not any(e[:-1]) for e in f):
            continue  # depends on t alone: a unit over Q(t)
        factors.append((MultiPoly.from_z(p.vars, f if with_t else f, with_t), m))
    factors.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    prod = MultiPoly.const(p.vars, 1)
    for f, m in factors:
        prod = prod * f ** m
    unit = _ratio(p, prod)
    return Factorization(unit, factors)


def _ratio(p: MultiPoly, q: MultiPoly):
    """The scalar c with p = c*q (q a scalar multiple of p)."""
    e, c = q.leading_term()
    a = p.terms.get(e)
    if a is None:
        raise AssertionError("factorization does not reproduce its input")
    return cnorm(a / c if not isinstance(c, RatFunc) else a * c.inverse())


def is_irreducible(p: MultiPoly) -> bool:
    if p.is_constant():
        return False
    fz = factorize(p)
    return len(fz.factors) == 1 and fz.factors[0][1] == 1


def rational_roots(p: MultiPoly, var: str) -> list:
    """Roots in the coefficient field of a polynomial in one variable ``var``."""
    fz = factorize(p)
    roots = []
    for f, _ in fz.factors:
        if f.degree(var) == 1 and set(f.used_vars()) <= {var}:
            cs = f.coeffs_in(var)
            a = cs[1].constant_value()
            b = cs.get(0)
            b = b.constant_value() if b is not None else Fraction(0)
            roots.append(cnorm(-b / a if not isinstance(a, RatFunc) else -b * a.inverse()))
    return roots
