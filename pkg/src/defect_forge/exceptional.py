"""Parameter selection and exceptional-set construction for the GCD bounds.

``gcd_params`` picks the smallest m >= 2d meeting the two rational
inequalities that drive the GCD estimate.  ``build_H`` runs the chain of
unimodular monomial substitutions and collects specialization obstructions,
``build_Z_projective`` adds the subsum hypersurfaces, and ``build_Z_n2``
lists the exceptional values of the binomial curves in the plane case.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, gcd

from .algebra.factor import factorize
from .algebra.laurent import monomial_transform
from .algebra.multipoly import MultiPoly
from .algebra.ops import has_monomial_factor, is_squarefree, poly_gcd, poly_resultant, squarefree_part
from .algebra.ratfunc import RatFunc, cnorm
from .errors import InvalidInput, PreconditionViolated, ResourceLimit
from .lattice import UnimodularMatrix, bezout_pair, enumerate_unimodular
from .specialization import compute_sigma

log = logging.getLogger(__name__)

SEARCH_CAP = 10**9
LINEAR_SCAN = 10**6
DEFAULT_BUDGET = 10**4


# --- gcd parameters -------------------------------------------------------------


@dataclass(frozen=True)
class GcdParams:
    n: int
    d: int
    epsilon: Fraction
    kappa: Fraction
    L: int | None
    m: int
    c: int
    M: int
    M_prime: int
    C1: Fraction
    residuals: tuple


def c_constant(m: int, n: int, d: int) -> int:
    return 2 * comb(m + n - d, n + 1) - comb(m + n - 2 * d, n + 1)


def M_constant(m: int, n: int, d: int) -> int:
    return 2 * comb(m + n - d, n) - comb(m + n - 2 * d, n)


def M_prime(m: int, n: int, kappa: Fraction) -> int:
    return ceil(kappa * m ** (n - 2))


def findm_residuals(n: int, d: int, epsilon, kappa, m: int) -> tuple:
    """(lhs - rhs) of both inequalities at m; both <= 0 means m is acceptable."""
    eps = Fraction(epsilon)
    c = c_constant(m, n, d)
    M = M_constant(m, n, d)
    Mp = M_prime(m, n, Fraction(kappa))
    r1 = Fraction(Mp * m * n, M) - eps / 4
    r2 = (Fraction(m, n + 1) * comb(m + n, n) - c - Mp * m) / M - eps / (4 * (n + 1))
    return r1, r2


def _ok(n, d, eps, kappa, m) -> bool:
    r1, r2 = findm_residuals(n, d, eps, kappa, m)
    return r1 <= 0 and r2 <= 0


def gcd_params(n: int, d: int, epsilon, kappa=1, L: int | None = None) -> GcdParams:
    """Smallest m >= 2d satisfying both inequalities (exact rational arithmetic)."""
    eps = Fraction(epsilon)
    kappa = Fraction(kappa)
    if n < 2:
        raise InvalidInput("n must be at least 2")
    if d < 1:
        raise InvalidInput("d must be at least 1")
    if eps <= 0 or kappa <= 0:
        raise InvalidInput("epsilon and kappa must be positive")
    if L is not None and L < 1:
        raise InvalidInput("L must be a positive integer")
    lo = 2 * d
    found = None
    m = lo
    while m <= min(LINEAR_SCAN, SEARCH_CAP):
        if _ok(n, d, eps, kappa, m):
            found = m
            break
        m += 1
    if found is None:
        # galloping past the linear range, then bisection on the first success
        hi = m
        prev = m - 1
        while hi <= SEARCH_CAP and not _ok(n, d, eps, kappa, hi):
            prev = hi
            hi *= 2
        if hi > SEARCH_CAP:
            r = findm_residuals(n, d, eps, kappa, SEARCH_CAP)
            raise ResourceLimit(
                f"no m below {SEARCH_CAP} satisfies both inequalities",
                detail={"residuals": [str(x) for x in r]},
            )
        lo_b, hi_b = prev, hi
        while hi_b - lo_b > 1:
            mid = (lo_b + hi_b) // 2
            if _ok(n, d, eps, kappa, mid):
                hi_b = mid
            else:
                lo_b = mid
        found = hi_b
    m = found
    return GcdParams(
        n=n, d=d, epsilon=eps, kappa=kappa, L=L, m=m,
        c=c_constant(m, n, d), M=M_constant(m, n, d), M_prime=M_prime(m, n, kappa),
        C1=m * eps, residuals=findm_residuals(n, d, eps, kappa, m),
    )


# --- H from the unimodular substitution chain -------------------------------------


@dataclass
class HFactor:
    step: int
    matrix: tuple
    poly: MultiPoly
    sigma: MultiPoly


@dataclass
class HResult:
    H: MultiPoly
    factors: list
    budget_exhausted: bool
    bounds: list = field(default_factory=list)
    matrices_used: int = 0


def _check_affine(G: MultiPoly):
    if G.is_constant():
        raise PreconditionViolated("G is constant")
    if has_monomial_factor(G):
        raise PreconditionViolated(f"G has a monomial factor: {G}")
    if not is_squarefree(G):
        raise PreconditionViolated(f"G has a repeated factor: {G}")


def _step_names(s: int, n: int) -> tuple:
    return tuple(f"L{k}" for k in range(1, s + 1)) + tuple(f"X{s}_{k}" for k in range(s + 1, n + 1))


def _pull_back(gen: MultiPoly, C: UnimodularMatrix, s: int, xvars) -> MultiPoly:
    """Substitute L_k = x^(row k of C) into a polynomial in L_1..L_s; clear denominators."""
    terms: dict = {}
    n = C.n
    for e, c in gen.terms.items():
        ex = [0] * n
        for k in range(s):
            if e[k]:
                for j in range(n):
                    ex[j] += e[k] * C.rows[k][j]
        ex = tuple(ex)
        terms[ex] = cnorm(terms.get(ex, 0) + c)
    terms = {e: c for e, c in terms.items() if c != 0}
    # multiply by the smallest monomial that clears negative exponents only
    shift = tuple(min(0, min(e[j] for e in terms)) for j in range(n))
    poly = MultiPoly(xvars, {tuple(a - b for a, b in zip(e, shift)): c for e, c in terms.items()})
    return squarefree_part(poly)


def _obstructions(core: MultiPoly, s: int) -> list:
    params = core.vars[:s]
    xs = core.vars[s:]
    if all(core.degree(x) <= 0 for x in xs):
        # after specialization the core is a constant; it vanishes exactly on its zero set
        return [core.with_vars(core.vars).primitive()]
    sig = compute_sigma(core, params=list(params))
    return [g.with_vars(core.vars) for g in sig.generators if not g.is_constant()]


def build_H(G: MultiPoly, epsilon, budget: int = DEFAULT_BUDGET, kappa=1,
            matrices=None) -> HResult:
    """Product of specialization obstructions over the substitution chain.

    ``matrices`` optionally fixes the step-1 matrices (each n x n unimodular,
    first row the relation vector); otherwise they are enumerated up to the
    norm bound in a deterministic order, at most ``budget`` per step.
    """
    _check_affine(G)
    n = G.nvars
    if n < 2:
        raise InvalidInput("build_H needs at least two variables")
    if budget < 0:
        raise InvalidInput("budget must be nonnegative")
    xvars = G.vars
    one = MultiPoly.const(xvars, 1)
    if budget == 0:
        return HResult(one, [], True)
    factors: dict = {}
    exhausted = False
    used = 0
    bounds = []
    paths = [(UnimodularMatrix.identity(n), G)]
    for s in range(1, n):
        k = n - s + 1
        names = _step_names(s, n)
        new_paths = []
        count = 0
        for C_prev, core_prev in paths:
            deg = max(core_prev.total_degree(), 1)
            gp = gcd_params(k, deg, epsilon, kappa) if k >= 2 else None
            Ms = max(2 * deg, 2 * gp.m) if gp else 2 * deg
            bound = Ms + n
            bounds.append({"step": s, "M": Ms, "norm_bound": bound})
            if s == 1 and matrices is not None:
                source = (UnimodularMatrix(A) for A in matrices)
            else:
                source = enumerate_unimodular(k, bound)
            for A in source:
                if count >= budget:
                    exhausted = True
                    break
                count += 1
                if A.n != k:
                    raise InvalidInput(f"step {s} matrix must be {k} x {k}")
                A_full = A.pad_identity(s - 1) if s > 1 else A
                C = A_full @ C_prev
                lf = monomial_transform(G, C, "forward", names)
                core = lf.core
                for gen in _obstructions(core, s):
                    h = _pull_back(gen, C, s, xvars)
                    if not h.is_constant() and h not in factors:
                        factors[h] = HFactor(s, C.rows, h, gen)
                if s + 1 < n:
                    new_paths.append((C, core))
            if count >= budget and exhausted:
                break
        used += count
        paths = new_paths
        if not paths:
            break
    ordered = sorted(factors.values(), key=lambda f: f.poly.sort_key())
    H = one
    for f in ordered:
        H = H * f.poly
    return HResult(H, ordered, exhausted, bounds, used)


# --- projective exceptional set ----------------------------------------------------


@dataclass
class ExceptionalDescription:
    kind: str
    polynomials: list  # (tag, MultiPoly)
    budget_exhausted: bool = False
    meta: dict = field(default_factory=dict)
    n2: object = None

    def product(self, like: MultiPoly) -> MultiPoly:
        out = MultiPoly.const(like.vars, 1)
        for _, p in self.polynomials:
            out = out * p
        return out


def _check_projective(F: MultiPoly):
    if F.is_constant():
        raise PreconditionViolated("F is constant")
    if not F.is_homogeneous():
        raise PreconditionViolated("F is not homogeneous")
    if has_monomial_factor(F):
        raise PreconditionViolated(f"F has a monomial factor: {F}")
    if not is_squarefree(F):
        raise PreconditionViolated(f"F has a repeated factor: {F}")


def subsum_forms(F: MultiPoly, include_full: bool = True) -> list:
    """All nonempty subsums of F's terms, in a canonical order."""
    items = sorted(F.terms.items(), reverse=True)
    out = []
    top = len(items) + (1 if include_full else 0)
    for r in range(1, top):
        for J in combinations(items, r):
            out.append(MultiPoly(F.vars, dict(J)))
    return out


def build_Z_projective(F: MultiPoly, epsilon, budget: int = DEFAULT_BUDGET, kappa=1,
                       matrices=None) -> ExceptionalDescription:
    _check_projective(F)
    x0 = F.vars[0]
    n = F.nvars - 1
    polys = []
    exhausted = False
    meta = {"n": n, "epsilon": str(Fraction(epsilon)), "kappa": str(Fraction(kappa)),
            "budget": budget}
    if n >= 2:
        G = F.dehomogenize(x0)
        hres = build_H(G, epsilon, budget, kappa, matrices)
        exhausted = hres.budget_exhausted
        for hf in hres.factors:
            rows = ";".join(",".join(str(a) for a in r) for r in hf.matrix)
            polys.append((f"H step {hf.step} matrix [{rows}]", hf.poly.homogenize(x0).primitive()))
        meta["matrices"] = hres.matrices_used
        meta["bounds"] = hres.bounds[:1]
        if hres.bounds:
            gp = gcd_params(n, max(G.total_degree(), 1), epsilon, kappa)
            meta.update({"m": gp.m, "M_prime": gp.M_prime})
    full = len(F.terms)
    for w in subsum_forms(F):
        tag = "F" if len(w.terms) == full else "W"
        polys.append((tag, w))
    return ExceptionalDescription("FullZ", polys, exhausted, meta)


# --- the plane case ------------------------------------------------------------------


@dataclass
class N2Result:
    relation: tuple
    bezout: tuple
    B: MultiPoly
    shift: tuple
    gamma: list
    alpha: list
    degree_drop: list
    J: list
    R: list
    implicit: list
    curves: list


def _roots_and_implicit(p: MultiPoly, var: str):
    """Roots of a univariate polynomial in the coefficient field, plus the other irreducible factors."""
    if p.is_zero():
        raise InvalidInput("zero polynomial has no finite root set")
    if p.is_constant():
        return [], []
    fz = factorize(p)
    roots, implicit = [], []
    for f, _ in fz.factors:
        if f.degree(var) == 1:
            cs = f.coeffs_in(var)
            a = cs[1].constant_value()
            b = cs[0].constant_value() if 0 in cs else Fraction(0)
            r = cnorm(-b / a if not isinstance(a, RatFunc) else -b * a.inverse())
            roots.append(r)
        else:
            implicit.append(f)
    return roots, implicit


def _fails_clean(B: MultiPoly, lam, L="L", T="T") -> bool:
    """True when B(lam, T) is zero, has T as a factor, or has a repeated factor."""
    h = B.subs({L: lam}).with_vars((T,))
    if h.is_zero():
        return True
    if has_monomial_factor(h):
        return True
    return not is_squarefree(h)


def _dedupe(values):
    seen, out = set(), []
    for v in values:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _value_key(v):
    if isinstance(v, RatFunc):
        return (1, str(v))
    return (0, v)


def build_Z_n2(G: MultiPoly, relation, check_position: bool = True) -> ExceptionalDescription:
    from .nullstellensatz import check_weak_general_position

    if G.nvars != 3:
        raise InvalidInput("build_Z_n2 needs a form in three variables")
    _check_projective(G)
    n1, n2 = (int(v) for v in relation)
    if gcd(n1, n2) != 1:
        raise PreconditionViolated(f"relation ({n1}, {n2}) is not primitive")
    coords = [MultiPoly.var(G.vars, v) for v in G.vars]
    if check_position:
        check_weak_general_position(coords + [G])
    a, b = bezout_pair(n1, n2)
    G1 = G.dehomogenize(G.vars[0])
    # X = L^a T^n2, Y = L^b T^-n1: exponent (i, j) -> (i, j) [[a, n2], [b, -n1]]
    M = UnimodularMatrix([[a, n2], [b, -n1]])
    lf = monomial_transform(G1, M, "inverse", ("L", "T"))
    B = lf.core
    if B.degree("T") <= 0:
        raise PreconditionViolated("B does not depend on T")
    cs = B.coeffs_in("T")
    lvars = ("L",)
    b0 = cs.get(0)
    gamma, implicit = [], []
    if b0 is not None:
        r, imp = _roots_and_implicit(b0.with_vars(lvars), "L")
        gamma = r
        implicit += [("gamma", f) for f in imp]
    res = poly_resultant(B, B.diff("T"), "T").with_vars(lvars)
    cand, imp = _roots_and_implicit(res, "L")
    implicit += [("alpha", f) for f in imp]
    alpha, drop = [], []
    for lam in cand:
        (alpha if _fails_clean(B, lam) else drop).append(lam)
    J = []
    for i in sorted(cs):
        bi = cs[i].with_vars(lvars)
        J.extend(subsum_forms(bi, include_full=True))
    J = sorted(set(J), key=lambda q: q.sort_key())
    Rset = []
    for h in J:
        r, imp = _roots_and_implicit(h, "L")
        Rset += r
        implicit += [("R", f) for f in imp]
    gamma = sorted(_dedupe(gamma), key=_value_key)
    alpha = sorted(_dedupe(alpha), key=_value_key)
    drop = sorted(_dedupe(drop), key=_value_key)
    Rset = sorted(_dedupe(Rset), key=_value_key)
    implicit_d = []
    seen = set()
    for tag, f in implicit:
        if (tag, f) not in seen:
            seen.add((tag, f))
            implicit_d.append((tag, f))
    curves = []
    e = (-(n1 + n2), n1, n2)
    ep = tuple(max(x, 0) for x in e)
    em = tuple(max(-x, 0) for x in e)
    for lam in _dedupe(gamma + alpha + Rset):
        if lam == 0:
            continue
        curve = MultiPoly(G.vars, {ep: 1}) - MultiPoly(G.vars, {em: lam})
        curves.append((lam, curve))
    res_n2 = N2Result((n1, n2), (a, b), B, lf.monomial, gamma, alpha, drop, J, Rset,
                      implicit_d, curves)
    polys = [("curve", c) for _, c in curves]
    meta = {"relation": (n1, n2), "bezout": (a, b)}
    return ExceptionalDescription("N2List", polys, False, meta, res_n2)


def poly_gcd_T(B: MultiPoly, lam) -> MultiPoly:
    """gcd(B(lam, T), dB/dT(lam, T)) as a polynomial in T."""
    h = B.subs({"L": lam}).with_vars(("T",))
    return poly_gcd(h, h.diff("T"))
