"""Independent reference computations used only by the tests.

They deliberately avoid the package's own algorithms: sympy for symbolic
facts, brute-force enumeration for small lattice and irreducibility
questions, and plain binomials for the gcd inequalities.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import sympy

from defect_forge.algebra.multipoly import MultiPoly
from defect_forge.algebra.ratfunc import RatFunc


def to_sympy(p: MultiPoly):
    syms = {v: sympy.Symbol(v) for v in p.vars}
    t = sympy.Symbol("t")
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        if isinstance(c, RatFunc):
            num = sum(sympy.Rational(x.numerator, x.denominator) * t**k for k, x in enumerate(c.num))
            den = sum(sympy.Rational(x.numerator, x.denominator) * t**k for k, x in enumerate(c.den))
            coeff = num / den
        else:
            c = Fraction(c)
            coeff = sympy.Rational(c.numerator, c.denominator)
        mono = sympy.Integer(1)
        for v, k in zip(p.vars, e):
            mono *= syms[v] ** k
        expr += coeff * mono
    return sympy.expand(expr)


def sympy_equal(p: MultiPoly, expr) -> bool:
    return sympy.simplify(to_sympy(p) - expr) == 0


# --- irreducibility over Q for univariate degree <= 4 ------------------------------


def _divisors(n: int):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def univariate_irreducible(coeffs) -> bool:
    """coeffs ascending integers; degree <= 4. Rational-root test plus quadratic matching."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    deg = len(c) - 1
    assert 1 <= deg <= 4
    if deg == 1:
        return True
    if c[0] == 0:
        return False
    for p in _divisors(c[0]):
        for q in _divisors(c[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(Fraction(a) * r**k for k, a in enumerate(c)) == 0:
                    return False
    if deg <= 3:
        return True
    # degree 4 without linear factors: look for (a x^2 + b x + e)(f x^2 + g x + h) over Z
    lead, const = c[4], c[0]
    bound = sum(abs(x) for x in c) + 1
    for a in _divisors(lead):
        f = lead // a
        for e in _divisors(const):
            for se in (1, -1):
                ee = se * e
                h = const // ee
                for b in range(-bound, bound + 1):
                    # x^3 coefficient: a g + b f = c3
                    num = c[3] - b * f
                    if num % a:
                        continue
                    g = num // a
                    if a * h + b * g + ee * f == c[2] and b * h + ee * g == c[1]:
                        return False
    return True


# --- lattice ------------------------------------------------------------------------


def _det(rows):
    return sympy.Matrix(rows).det()


def brute_force_completion(m) -> list | None:
    """Search rows with |v_j| <= max(|m_j|, 1) completing m to det +-1 (n <= 3)."""
    n = len(m)
    bounds = [max(abs(x), 1) for x in m]
    boxes = [range(-b, b + 1) for b in bounds]
    if n == 2:
        for v in itertools.product(*boxes):
            if abs(m[0] * v[1] - m[1] * v[0]) == 1:
                return [list(m), list(v)]
        return None
    assert n == 3
    for v in itertools.product(*boxes):
        # cross product c = m x v; need w in the box with c . w = +-1
        c = (m[1] * v[2] - m[2] * v[1], m[2] * v[0] - m[0] * v[2], m[0] * v[1] - m[1] * v[0])
        if gcd(gcd(c[0], c[1]), c[2]) != 1:
            continue
        for w0 in boxes[0]:
            for w1 in boxes[1]:
                rest = c[0] * w0 + c[1] * w1
                for target in (1, -1):
                    if c[2] == 0:
                        if rest == target:
                            return [list(m), list(v), [w0, w1, 0]]
                        continue
                    q, r = divmod(target - rest, c[2])
                    if r == 0 and abs(q) <= bounds[2]:
                        return [list(m), list(v), [w0, w1, q]]
    return None


# --- gcd inequalities -----------------------------------------------------------------


def binom(a: int, b: int) -> int:
    """Binomial via sympy, zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return int(sympy.binomial(a, b))


def findm_holds(n: int, d: int, eps, kappa, m: int) -> bool:
    eps = Fraction(eps)
    kappa = Fraction(kappa)
    c = 2 * binom(m + n - d, n + 1) - binom(m + n - 2 * d, n + 1)
    M = 2 * binom(m + n - d, n) - binom(m + n - 2 * d, n)
    q = kappa * m ** (n - 2)
    Mp = int(q) + (0 if q.denominator == 1 else 1)
    first = Fraction(Mp * m * n, M) <= eps / 4
    second = (Fraction(m, n + 1) * binom(m + n, n) - c - Mp * m) / M <= eps / (4 * (n + 1))
    return first and second

