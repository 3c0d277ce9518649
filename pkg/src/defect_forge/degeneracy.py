"""Degeneracy locus for n+1 hypersurfaces in projective n-space.

The pipeline: Jacobian determinant G of the forms, an irreducible factor
G~ of G, the morphism pi = [F_1^a_1 : ... : F_{n+1}^a_{n+1}], an irreducible
A in y with pi*A = G~^2 H, the exceptional hypersurfaces of A, and finally
B = B_0(F_1^a_1, ..., F_{n+1}^a_{n+1}).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .algebra.factor import factorize
from .algebra.multipoly import MultiPoly
from .algebra.ops import poly_div_exact, poly_resultant, squarefree_part
from .errors import (
    DefectForgeError,
    InvalidInput,
    NotInPosition,
    PipelineFailure,
    PreconditionViolated,
)
from .exceptional import DEFAULT_BUDGET, ExceptionalDescription, build_Z_projective
from .nullstellensatz import (
    PositionWitness,
    check_weak_general_position,
    has_only_trivial_zero,
    rational_samples,
)

log = logging.getLogger(__name__)


def _det(rows: list) -> MultiPoly:
    """Laplace expansion along the first row (exact)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else rows[0][0].zero()


def jacobian_det(F: list) -> MultiPoly:
    if not F:
        raise InvalidInput("no forms given")
    variables = F[0].vars
    if any(f.vars != variables for f in F):
        raise InvalidInput("forms must share one variable list")
    if len(F) != len(variables):
        raise InvalidInput(f"{len(F)} forms in {len(variables)} variables: need a square Jacobian")
    rows = [[f.diff(v) for v in variables] for f in F]
    return _det(rows)


@dataclass
class PiMorphism:
    forms: list
    exponents: tuple
    common_degree: int
    target_vars: tuple
    witness: PositionWitness | None = None

    def components(self) -> list:
        return [f ** a for f, a in zip(self.forms, self.exponents)]

    def pullback(self, A: MultiPoly) -> MultiPoly:
        """A(F_1^a_1, ..., F_{n+1}^a_{n+1})."""
        if A.vars != self.target_vars:
            A = A.with_vars(self.target_vars)
        images = dict(zip(self.target_vars, self.components()))
        return A.compose(images, self.forms[0].vars)


def build_pi(F: list, check_position: bool = True) -> PiMorphism:
    if not F:
        raise InvalidInput("no forms given")
    for f in F:
        if f.is_constant():
            raise InvalidInput("forms must be nonconstant")
        if not f.is_homogeneous():
            raise InvalidInput(f"form {f} is not homogeneous")
    witness = check_weak_general_position(F) if check_position else None
    degs = [f.total_degree() for f in F]
    L = lcm(*degs)
    a = tuple(L // d for d in degs)
    names = tuple(f"y{i}" for i in range(len(F)))
    return PiMorphism(list(F), a, degs[0] * a[0], names, witness)


# --- image of the ramification component ------------------------------------------


def _eliminate(polys: list, elim_vars: list) -> list:
    """Iterated resultants: returns polynomials free of ``elim_vars``."""
    current = [p for p in polys if not p.is_zero()]
    for v in elim_vars:
        having = [p for p in current if p.degree(v) > 0]
        free = [p for p in current if p.degree(v) <= 0]
        if not having:
            continue
        having.sort(key=lambda p: (p.degree(v), p.sort_key()))
        pivot = having[0]
        nxt = list(free)
        for q in having[1:]:
            r = poly_resultant(pivot, q, v)
            if r.is_zero() or r.is_constant():
                continue
            nxt.append(squarefree_part(r))
        current = nxt
    return current


def _is_coordinate(p: MultiPoly):
    if len(p.terms) != 1:
        return None
    (e,) = p.terms
    if sum(e) == 1:
        return e.index(1)
    return None


def image_hypersurface(Gtilde: MultiPoly, pi: PiMorphism):
    """Irreducible A in y with pi*A divisible by Gtilde^2; returns (A, H)."""
    xvars = pi.forms[0].vars
    if Gtilde.vars != xvars:
        raise InvalidInput("Gtilde must use the variables of the forms")
    if Gtilde.is_constant():
        raise InvalidInput("Gtilde must be nonconstant")
    if not Gtilde.is_homogeneous():
        raise InvalidInput("Gtilde must be homogeneous")
    n1 = len(xvars)
    # dehomogenize at a coordinate whose hyperplane does not contain Y
    coord = _is_coordinate(Gtilde)
    k = n1 - 1 if coord != n1 - 1 else 0
    keep = xvars[:k] + xvars[k + 1:]
    yv = pi.target_vars
    allv = keep + yv
    ys = [MultiPoly.var(allv, y) for y in yv]
    comps = [c.dehomogenize(xvars[k]).with_vars(keep).with_vars(allv) for c in pi.components()]
    eqs = [Gtilde.dehomogenize(xvars[k]).with_vars(keep).with_vars(allv)]
    for i in range(1, n1):
        eqs.append(ys[0] * comps[i] - ys[i] * comps[0])
    elim = _eliminate(eqs, list(keep))
    cands = []
    for p in elim:
        if any(p.degree(v) > 0 for v in keep):
            continue
        for f, _ in factorize(p.with_vars(yv)).factors:
            if f not in cands and not f.is_constant():
                cands.append(f)
    cands.sort(key=lambda f: f.sort_key())
    g2 = Gtilde * Gtilde
    for A in cands:
        pb = pi.pullback(A)
        if pb.is_zero():
            continue
        H = poly_div_exact(pb, g2)
        if H is not None:
            return A, H
    raise PipelineFailure(
        "no factor of the elimination polynomial has a pullback divisible by Gtilde^2",
        stage="image_hypersurface",
        candidates=[str(c) for c in cands],
    )


# --- transversality ---------------------------------------------------------------


def _transversal_at(forms: list) -> bool:
    """Exact sufficient test over Q for n <= 2: smooth members, transversal pairs."""
    vs = forms[0].vars
    n = len(vs) - 1
    for f in forms:
        if f.total_degree() > 1 and not has_only_trivial_zero([f.diff(v) for v in vs]):
            return False
    if n <= 1:
        return True
    rng = random.Random(0)
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            f, g = forms[i], forms[j]
            minors = []
            for a in range(3):
                for b in range(a + 1, 3):
                    minors.append(f.diff(vs[a]) * g.diff(vs[b]) - f.diff(vs[b]) * g.diff(vs[a]))
            ok = False
            for _ in range(4):
                combo = minors[0].zero()
                for m in minors:
                    combo = combo + m.scale(rng.randint(1, 97))
                if combo.is_zero():
                    continue
                if has_only_trivial_zero([f, g, combo]):
                    ok = True
                    break
            if not ok:
                return False
    return True


def check_transversal(F: list, samples: int = 20):
    """Sample t = z0 where the specialized forms are transversal; returns z0 or None."""
    uses_t = any(f.has_t() for f in F)
    tried = 0
    for z0 in rational_samples():
        if tried >= samples:
            break
        tried += 1
        try:
            spec = [f.subs_t(z0) for f in F] if uses_t else list(F)
        except ZeroDivisionError:
            continue
        if any(s.is_zero() or s.is_constant() for s in spec):
            continue
        try:
            if _transversal_at(spec):
                return z0
        except DefectForgeError:
            pass
        if not uses_t:
            break
    return None


# --- the full pipeline -------------------------------------------------------------


@dataclass
class FactorRun:
    Gtilde: MultiPoly
    A: MultiPoly
    H: MultiPoly
    description: ExceptionalDescription
    B0: MultiPoly
    B: MultiPoly


@dataclass
class PipelineReport:
    G: MultiPoly
    Gtilde: MultiPoly
    A: MultiPoly
    H: MultiPoly
    B0: MultiPoly
    B: MultiPoly
    degree_bound: int
    divisibility_check: bool
    budget_exhausted: bool
    epsilon: Fraction
    pi: PiMorphism
    runs: list = field(default_factory=list)
    transversality: str = ""
    meta: dict = field(default_factory=dict)


def _check_inputs(F: list):
    if not F:
        raise InvalidInput("no forms given")
    n1 = F[0].nvars
    if len(F) != n1:
        raise InvalidInput(f"expected {n1} forms in {n1} variables, got {len(F)}")
    for f in F:
        if f.is_constant():
            raise PreconditionViolated("forms must be nonconstant")
        if not f.is_homogeneous():
            raise PreconditionViolated(f"form {f} is not homogeneous")
    total = sum(f.total_degree() for f in F)
    if total < n1 + 1:
        raise PreconditionViolated(
            f"sum of degrees {total} is below n+2 = {n1 + 1}"
        )
    for f in F:
        fz = factorize(f)
        if len(fz.factors) != 1 or fz.factors[0][1] != 1:
            raise PreconditionViolated(f"form {f} is not irreducible")


def _run_factor(Gt, pi, eps, budget, kappa) -> FactorRun:
    A, H = image_hypersurface(Gt, pi)
    desc = build_Z_projective(A, eps, budget, kappa)
    B0 = desc.product(A)
    B = pi.pullback(B0)
    if B.is_zero():
        raise PipelineFailure("B vanishes identically", stage="pullback")
    return FactorRun(Gt, A, H, desc, B0, B)


def degeneracy_locus(F: list, epsilon=None, budget: int = DEFAULT_BUDGET, kappa=1,
                     all_factors: bool = False, assert_transversal: bool = False) -> PipelineReport:
    _check_inputs(F)
    n = F[0].nvars - 1
    pi = build_pi(F)
    if n <= 2:
        z0 = check_transversal(F)
        if z0 is None:
            if not assert_transversal:
                raise PreconditionViolated("could not establish transversal intersection at any sample")
            how = "asserted"
        else:
            how = f"exact at t = {z0}"
    else:
        if not assert_transversal:
            raise PreconditionViolated("transversality for n > 2 must be asserted explicitly")
        how = "asserted (weak general position checked)"
    G = jacobian_det(F)
    if G.is_constant():
        raise InvalidInput("Jacobian determinant is constant: no ramification factor")
    eps = Fraction(epsilon) if epsilon is not None else Fraction(1, 4 * pi.common_degree)
    factors = [f for f, _ in factorize(G).factors if not f.is_constant()]
    admissible = []
    for f in factors:
        try:
            check_weak_general_position([f] + list(F))
        except NotInPosition:
            continue
        admissible.append(f)
        if not all_factors:
            break
    if not admissible:
        raise PipelineFailure("no irreducible factor of G is in weakly general position with the forms",
                              stage="select_factor", candidates=[str(f) for f in factors])
    runs = [_run_factor(Gt, pi, eps, budget, kappa) for Gt in admissible]
    first = runs[0]
    B0 = first.B0
    B = first.B
    for r in runs[1:]:
        B0 = B0 * r.B0
        B = B * r.B
    if not B.is_homogeneous():
        raise PipelineFailure("B is not homogeneous", stage="pullback")
    bound = B0.total_degree() * pi.common_degree
    return PipelineReport(
        G=G, Gtilde=first.Gtilde, A=first.A, H=first.H, B0=B0, B=B,
        degree_bound=bound, divisibility_check=True,
        budget_exhausted=any(r.description.budget_exhausted for r in runs),
        epsilon=eps, pi=pi, runs=runs, transversality=how,
        meta={"budget": budget, "kappa": str(Fraction(kappa)), "factors": len(runs)},
    )
