"""Gcd, exact division, resultants and squarefree parts for MultiPoly."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidInput
from . import zpoly as Z
from .multipoly import MultiPoly, _remove_t_content
from .ratfunc import RatFunc, cnorm


def _common_lift(*polys: MultiPoly):
    with_t = any(p.has_t() for p in polys)
    out = [p.to_z(with_t) for p in polys]
    return with_t, out


def _check_vars(p: MultiPoly, q: MultiPoly):
    if p.vars != q.vars:
        raise InvalidInput(f"variable mismatch {p.vars} vs {q.vars}")


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Gcd over the coefficient field, normalized as by ``MultiPoly.primitive``."""
    _check_vars(p, q)
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    with_t, [(zp, _), (zq, _)] = _common_lift(p, q)
    g = Z.zgcd(zp, zq)
    if with_t:
        g = _remove_t_content(g, p.nvars)
    g = Z.zprimitive(g)
    return MultiPoly.from_z(p.vars, g, with_t)


def poly_div_exact(p: MultiPoly, q: MultiPoly):
    """p / q over the coefficient field, or None when q does not divide p."""
    _check_vars(p, q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p.zero()
    with_t, [(zp, sp), (zq, _)] = _common_lift(p, q)
    qq = zq
    if with_t:
        qq = _remove_t_content(qq, p.nvars)
    qq = Z.zprimitive(qq)
    quo = Z.zdiv_exact(zp, qq)
    if quo is None:
        return None
    res = MultiPoly.from_z(p.vars, quo, with_t)
    # p = quo/sp * qq and q = ratio * qq
    qprim = MultiPoly.from_z(p.vars, qq, with_t)
    e, c = qprim.leading_term()
    ratio = cnorm(q.terms[e] / c) if not isinstance(c, RatFunc) else cnorm(q.terms[e] * c.inverse())
    factor = cnorm((1 / sp if not isinstance(sp, RatFunc) else sp.inverse()))
    factor = cnorm(factor / ratio if not isinstance(ratio, RatFunc) else factor * ratio.inverse())
    return res.scale(factor)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    return poly_div_exact(p, q) is not None


def _bareiss_det(mat, nv: int):
    """Determinant of a square matrix of Z polynomials by fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return Z.zconst(1, nv)
    a = [list(row) for row in mat]
    sign = 1
    prev = Z.zconst(1, nv)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return {}
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = Z.zsub(Z.zmul(akk, a[i][j]), Z.zmul(aik, a[k][j]))
                if num:
                    q = Z.zdiv_exact(num, prev)
                    if q is None:
                        raise ArithmeticError("Bareiss division was not exact")
                    a[i][j] = q
                else:
                    a[i][j] = {}
            a[i][k] = {}
        prev = akk
    det = a[n - 1][n - 1]
    return Z.zneg(det) if sign < 0 else det


def sylvester_resultant_z(zp: dict, zq: dict, i: int, nv: int) -> dict:
    """Resultant in slot i of two Z polynomials, Sylvester rows of zp on top."""
    P = Z.zcoeffs_in(zp, i)
    Q = Z.zcoeffs_in(zq, i)
    m = max(P) if P else -1
    n = max(Q) if Q else -1
    if m <= 0 and n <= 0:
        return Z.zconst(1, nv) if (m == 0 or n == 0) else {}
    if m == 0:
        return Z.zpow(P[0], n, nv)
    if n == 0:
        return Z.zpow(Q[0], m, nv)
    size = m + n
    rows = []
    for r in range(n):
        row = [{} for _ in range(size)]
        for k, c in P.items():
            row[r + (m - k)] = c
        rows.append(row)
    for r in range(m):
        row = [{} for _ in range(size)]
        for k, c in Q.items():
            row[r + (n - k)] = c
        rows.append(row)
    return _bareiss_det(rows, nv)


def poly_resultant(p: MultiPoly, q: MultiPoly, var) -> MultiPoly:
    """Sylvester resultant with respect to ``var``; rows of p come first.

    The result lives over the same variable list with ``var`` absent.
    """
    _check_vars(p, q)
    if p.is_zero() and q.is_zero():
        raise InvalidInput("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        return p.zero()
    i = p._index(var)
    with_t, [(zp, sp), (zq, sq)] = _common_lift(p, q)
    nv = p.nvars + (1 if with_t else 0)
    m, n = p.degree(i), q.degree(i)
    r = sylvester_resultant_z(zp, zq, i, nv)
    res = MultiPoly.from_z(p.vars, r, with_t)
    scale = cnorm(sp ** n * sq ** m)
    if scale != 1:
        res = res.scale(1 / scale if not isinstance(scale, RatFunc) else scale.inverse())
    return res


def discriminant_like(p: MultiPoly, var) -> MultiPoly:
    """Res_var(p, dp/dvar), the unnormalized discriminant used for squarefree tests."""
    return poly_resultant(p, p.diff(var), var)


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of p, with content 1."""
    if p.is_zero():
        raise InvalidInput("squarefree part of the zero polynomial")
    g = p
    for v in p.used_vars():
        g = poly_gcd(g, p.diff(v))
        if g.is_constant():
            return p.primitive()
    q = poly_div_exact(p, g)
    assert q is not None
    return q.primitive()


def is_squarefree(p: MultiPoly) -> bool:
    """True when no irreducible factor of positive degree is repeated."""
    if p.is_zero():
        return False
    g = p
    for v in p.used_vars():
        g = poly_gcd(g, p.diff(v))
        if g.is_constant():
            return True
    return g.is_constant()


def has_monomial_factor(p: MultiPoly) -> bool:
    return any(p.monomial_content())


def strip_monomial(p: MultiPoly):
    """(monomial exponent, p divided by it)."""
    m = p.monomial_content()
    if not any(m):
        return m, p
    return m, MultiPoly(p.vars, Z.zdiv_monomial(p.terms, m), check=False)


def poly_lcm_scalar_denominator(p: MultiPoly) -> Fraction:
    zp, scale = p.to_z(False)
    return scale
