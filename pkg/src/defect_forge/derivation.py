"""Twisted derivative D_u on polynomials with coefficients in Q(t).

A model fixes logarithmic derivatives l_j = u_j'/u_j in Q(t), with ' = d/dt.
For F = sum a_I x^I,

    D_u(F) = sum (a_I' + a_I * sum_j i_j l_j) x^I,

so that D_u(F)(u) = d/dz [F(u)] whenever t is read as z and u_j(z) has the
given logarithmic derivative.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra.multipoly import MultiPoly
from .algebra.ops import has_monomial_factor, is_squarefree, poly_gcd
from .algebra.ratfunc import RatFunc, cderiv, cevalf, cnorm, pderiv, ptrim
from .errors import InvalidInput, PreconditionViolated


@dataclass(frozen=True)
class Realization:
    """u(z) = exp(p(z)) * q(z) with p in Q[z] (ascending coefficients) and q in Q(z)."""

    p: tuple
    q: object

    def log_derivative(self):
        q = cnorm(self.q)
        if q == 0:
            raise InvalidInput("realization has zero rational part")
        dp = cnorm(RatFunc(pderiv(ptrim(self.p)))) if self.p else Fraction(0)
        dq = cderiv(q)
        ratio = dq / q if not isinstance(q, RatFunc) else dq * q.inverse()
        return cnorm(dp + ratio)

    def evalf(self, z: complex) -> complex:
        e = 0j
        for c in reversed(self.p):
            e = e * z + float(c)
        return cmath.exp(e) * cevalf(self.q, z)


@dataclass
class UModel:
    n: int
    log_derivs: list
    realization: list | None = field(default=None)

    def __post_init__(self):
        self.log_derivs = [cnorm(c) for c in self.log_derivs]
        if len(self.log_derivs) != self.n:
            raise InvalidInput(f"expected {self.n} logarithmic derivatives, got {len(self.log_derivs)}")
        if self.realization is not None:
            if len(self.realization) != self.n:
                raise InvalidInput("realization length does not match n")
            for j, (r, ell) in enumerate(zip(self.realization, self.log_derivs)):
                if r.log_derivative() != ell:
                    raise InvalidInput(f"realization {j + 1} has log-derivative "
                                       f"{r.log_derivative()}, expected {ell}")

    @classmethod
    def from_realization(cls, parts) -> "UModel":
        parts = [p if isinstance(p, Realization) else Realization(*p) for p in parts]
        return cls(len(parts), [p.log_derivative() for p in parts], parts)

    def u_values(self, z: complex) -> list:
        if self.realization is None:
            raise InvalidInput("model has no analytic realization")
        return [r.evalf(z) for r in self.realization]


def du_apply(F: MultiPoly, u: UModel) -> MultiPoly:
    if F.nvars != u.n:
        raise InvalidInput(f"F has {F.nvars} variables, model has dimension {u.n}")
    out = {}
    for e, c in F.terms.items():
        w = cderiv(c)
        s = 0
        for k, ell in zip(e, u.log_derivs):
            if k:
                s = s + k * ell
        w = cnorm(w + c * s) if s != 0 else w
        if w != 0:
            out[e] = w
    return MultiPoly(F.vars, out)


@dataclass(frozen=True)
class Coprime:
    pass


@dataclass(frozen=True)
class MonomialRelation:
    exponents: tuple
    common_factor: MultiPoly


def _relation_from_support(g: MultiPoly) -> tuple:
    supp = sorted(g.terms, reverse=True)
    a, b = supp[0], supp[1]
    m = [x - y for x, y in zip(a, b)]
    c = 0
    for x in m:
        c = gcd(c, x)
    m = [x // c for x in m]
    first = next(x for x in m if x)
    if first < 0:
        m = [-x for x in m]
    return tuple(m)


def du_coprime(F: MultiPoly, u: UModel):
    """Coprime() or a MonomialRelation read off the common factor of F and D_u(F)."""
    if F.nvars != u.n:
        raise InvalidInput(f"F has {F.nvars} variables, model has dimension {u.n}")
    if F.is_constant():
        raise PreconditionViolated("F is constant")
    if has_monomial_factor(F):
        raise PreconditionViolated(f"F has a monomial factor: {F}")
    if not is_squarefree(F):
        raise PreconditionViolated(f"F has a repeated factor: {F}")
    g = poly_gcd(F, du_apply(F, u))
    if g.is_constant():
        return Coprime()
    rel = _relation_from_support(g)
    if sum(abs(x) for x in rel) > 2 * F.total_degree():
        raise AssertionError("relation exceeds the degree bound")
    return MonomialRelation(rel, g)


def eval_at_u(F: MultiPoly, u: UModel, z: complex) -> complex:
    """F(u(z)) with t read as z."""
    vals = u.u_values(z)
    acc = 0j
    for e, c in F.terms.items():
        term = complex(cevalf(c, z))
        for v, k in zip(vals, e):
            if k:
                term *= v ** k
        acc += term
    return acc
