"""Exact exp-polynomial expressions sum_k c_k(z) exp(p_k(z)).

Exponents p_k are polynomials in Q[z] stored as ascending coefficient tuples
with the constant term kept (exp(p + c) and exp(p) are different terms);
coefficients live in Q(z), represented like the coefficients of MultiPoly
(``Fraction`` or ``RatFunc``, whose variable plays the role of z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..algebra.multipoly import MultiPoly
from ..algebra.parser import parse_curve_expr, split_lines
from ..algebra.ratfunc import RatFunc, cderiv, cnorm, padd, pderiv, pgcd, plcm, pmul, ptrim
from ..errors import CurveOnDivisor, InvalidInput, ParseError
from . import kernels


def _coeff_num_den(c):
    if isinstance(c, RatFunc):
        return c.num, c.den
    return ((Fraction(c),) if c else ()), (Fraction(1),)


class ExpSum:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = cnorm(c)
            if c != 0:
                clean[ptrim(tuple(Fraction(x) for x in e))] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "ExpSum":
        return cls({(): c})

    @classmethod
    def parse(cls, src: str, line: int = 1) -> "ExpSum":
        return cls(parse_curve_expr(src, line))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExpSum") -> "ExpSum":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ExpSum(out)

    def __neg__(self):
        return ExpSum({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "ExpSum":
        if not isinstance(other, ExpSum):
            return ExpSum({e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = ptrim(padd(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ExpSum(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExpSum":
        out = ExpSum.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, ExpSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def denominator(self) -> tuple:
        den = (Fraction(1),)
        for c in self.terms.values():
            den = plcm(den, _coeff_num_den(c)[1])
        return den

    def scale_poly(self, poly: tuple) -> "ExpSum":
        r = cnorm(RatFunc(poly)) if len(poly) > 1 else Fraction(poly[0])
        return ExpSum({e: c * r for e, c in self.terms.items()})

    def is_entire(self) -> bool:
        return all(len(_coeff_num_den(c)[1]) == 1 for c in self.terms.values())

    def derivative(self) -> "ExpSum":
        out: dict = {}
        for e, c in self.terms.items():
            dp = pderiv(e)
            w = cderiv(c)
            if dp:
                w = w + c * (cnorm(RatFunc(dp)) if len(dp) > 1 else dp[0])
            out[e] = out.get(e, 0) + w
        return ExpSum(out)

    def coefficient_gcd(self) -> tuple:
        g = ()
        for c in self.terms.values():
            g = pgcd(g, _coeff_num_den(c)[0])
        return g

    # --- numerics -------------------------------------------------------------
    def pack(self):
        """(E, C, D) matrices for the kernels; coefficients must be polynomials."""
        if not self.is_entire():
            raise InvalidInput("numeric evaluation needs polynomial coefficients")
        if not self.terms:
            raise InvalidInput("cannot pack the zero expression")
        items = sorted(self.terms.items())
        ne = max(len(e) for e, _ in items) or 1
        ce = []
        de = []
        for e, c in items:
            num = _coeff_num_den(c)[0]
            ce.append(num)
            d = padd(pderiv(num), pmul(num, pderiv(e)))
            de.append(d)
        nc = max(max((len(x) for x in ce), default=1), max((len(x) for x in de), default=1), 1)
        E = np.zeros((len(items), ne), dtype=np.complex128)
        C = np.zeros((len(items), nc), dtype=np.complex128)
        D = np.zeros((len(items), nc), dtype=np.complex128)
        for k, (e, _) in enumerate(items):
            for j, x in enumerate(e):
                E[k, j] = float(x)
            for j, x in enumerate(ce[k]):
                C[k, j] = float(x)
            for j, x in enumerate(de[k]):
                D[k, j] = float(x)
        return E, C, D

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            cs = f"({c})"
            if e:
                parts.append(f"exp({RatFunc(e)})*{cs}".replace("t", "z"))
            else:
                parts.append(cs.replace("t", "z"))
        return " + ".join(parts)

    __repr__ = __str__


class Evaluator:
    """Vectorized evaluation of an entire ExpSum in scaled form."""

    def __init__(self, f: ExpSum):
        self.expr = f
        self.E, self.C, self.D = f.pack()

    def values(self, z):
        w, _, s = kernels.eval_expsum(np.atleast_1d(np.asarray(z, dtype=np.complex128)),
                                      self.E, self.C)
        return w, s

    def with_derivative(self, z):
        return kernels.eval_expsum(np.atleast_1d(np.asarray(z, dtype=np.complex128)),
                                   self.E, self.C, self.D)

    def log_abs(self, z):
        w, s = self.values(z)
        return kernels.log_abs(w, s)

    def __call__(self, z):
        w, s = self.values(z)
        return w * np.exp(s)


@dataclass
class CurveSpec:
    """Components f_0..f_n, cleared to entire functions without a common polynomial factor."""

    components: list
    source: list | None = None

    def __post_init__(self):
        comps = [c if isinstance(c, ExpSum) else ExpSum(c) for c in self.components]
        if not comps or all(c.is_zero() for c in comps):
            raise InvalidInput("curve needs at least one nonzero component")
        den = (Fraction(1),)
        for c in comps:
            den = plcm(den, c.denominator())
        comps = [c.scale_poly(den) for c in comps]
        g = ()
        for c in comps:
            g = pgcd(g, c.coefficient_gcd())
        if len(g) > 1:
            inv = RatFunc((Fraction(1),), g)
            comps = [ExpSum({e: cnorm(c * inv) for e, c in comp.terms.items()}) for comp in comps]
        self.components = comps
        self._evals = [Evaluator(c) if not c.is_zero() else None for c in comps]

    @property
    def n(self) -> int:
        return len(self.components) - 1

    def log_norm(self, z) -> np.ndarray:
        """log max_i |f_i(z)|."""
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        out = np.full(z.shape, -np.inf)
        for ev in self._evals:
            if ev is not None:
                out = np.maximum(out, ev.log_abs(z))
        return out

    def compose(self, D: MultiPoly) -> ExpSum:
        """D(f) as an entire exp-sum; t in D's coefficients is read as z."""
        if D.nvars != len(self.components):
            raise InvalidInput(f"divisor has {D.nvars} variables, curve has {len(self.components)} components")
        powers: dict = {}

        def pw(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = self.components[i] ** k
            return powers[(i, k)]

        den = (Fraction(1),)
        for c in D.terms.values():
            den = plcm(den, _coeff_num_den(c)[1])
        acc = ExpSum()
        for e, c in D.terms.items():
            term = ExpSum.const(1)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            acc = acc + term * c
        acc = acc.scale_poly(den)
        return acc


def parse_curve(text: str) -> CurveSpec:
    """Curve file: one component per line (optionally ``f0 = ...``)."""
    comps, src = [], []
    for ln, s in split_lines(text):
        body = s.split("=", 1)[1] if "=" in s else s
        comps.append(ExpSum.parse(body.strip(), ln))
        src.append(s)
    if not comps:
        raise ParseError("no curve components in input", 1, 1)
    return CurveSpec(comps, src)


def divisor_on_curve(f: CurveSpec, D: MultiPoly, index: int | None = None) -> ExpSum:
    h = f.compose(D)
    if h.is_zero():
        raise CurveOnDivisor(f"the curve lies on the divisor {D}", index=index)
    return h

