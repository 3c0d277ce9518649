"""Obstruction sets for specializing parameters in a polynomial.

Given f in the parameters and the x-variables, ``compute_sigma`` returns
polynomials in the parameters such that f(lambda, x) keeps "no monomial
factor, no repeated factor" whenever every generator is nonzero at lambda.

For each x-variable x_j of positive degree the generators are the leading
and the constant x_j-coefficient and Res_{x_j}(f, df/dx_j), each with the
remaining x-variables replaced by fixed primes.  A nonzero leading
coefficient keeps the x_j-degree, which makes the resultant commute with
specialization; a nonzero constant coefficient rules out x_j as a factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.multipoly import MultiPoly
from .algebra.ops import has_monomial_factor, is_squarefree, poly_resultant, squarefree_part
from .algebra.ratfunc import RatFunc
from .errors import InvalidInput, PreconditionViolated

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]
MAX_RETRIES = 5


@dataclass
class SigmaSet:
    params: tuple
    generators: list
    product: MultiPoly
    substitution: dict = field(default_factory=dict)

    def admissible(self, values) -> bool:
        """True when every generator is nonzero at the parameter values."""
        pt = [values[p] for p in self.params] if isinstance(values, dict) else list(values)
        return all(g.evaluate(pt) != 0 for g in self.generators)


def _joint(f: MultiPoly, params):
    """Joint polynomial with x-variables first and parameters last.

    Returns (g, xs, ps, extra) where ``extra`` holds denominators that must
    also be avoided (when t is promoted to a parameter).
    """
    extra = []
    if params:
        params = tuple(params)
        for p in params:
            if p not in f.vars:
                raise InvalidInput(f"parameter {p!r} is not a variable of f")
        xs = tuple(v for v in f.vars if v not in params)
        return f.with_vars(xs + params), xs, params, extra
    xs = f.vars
    if not f.has_t():
        return f, xs, (), extra
    zp, scale = f.to_z(True)
    if isinstance(scale, RatFunc):
        den = MultiPoly(("t",), {(k,): c for k, c in enumerate(scale.num) if c})
        extra.append(den)
    g = MultiPoly(xs + ("t",), {e: c for e, c in zp.items()})
    return g, xs, ("t",), extra


def _normalize_generator(g: MultiPoly) -> MultiPoly:
    # only the zero set matters, so keep the radical
    return squarefree_part(g)


def compute_sigma(f: MultiPoly, params=None) -> SigmaSet:
    """Obstruction set for specializing ``params`` (default: the coefficient variable t)."""
    g, xs, ps, extra = _joint(f, params)
    if g.is_zero():
        raise InvalidInput("f is zero")
    if all(g.degree(x) <= 0 for x in xs):
        raise InvalidInput("f is constant in the x-variables")
    if has_monomial_factor(g):
        raise PreconditionViolated(f"f has a monomial factor: {g}")
    if not is_squarefree(g):
        raise PreconditionViolated(f"f has a repeated factor: {g}")
    active = [x for x in xs if g.degree(x) > 0]
    gens = None
    used = {}
    for attempt in range(MAX_RETRIES + 1):
        vals = []
        sub = {}
        for xj in active:
            # substitute the other x-variables first; the leading coefficient
            # surviving the substitution keeps the resultant compatible with it
            sub = {x: PRIMES[k + attempt] for k, x in enumerate(xs) if x != xj}
            h = g.subs(sub) if sub else g
            cs = h.coeffs_in(xj)
            lead = cs[max(cs)]
            trail = cs.get(0, h.zero())
            if lead.is_zero() or trail.is_zero() or max(cs) != g.degree(xj):
                break
            disc = poly_resultant(h, h.diff(xj), xj)
            if disc.is_zero():
                break
            vals.extend([lead, trail, disc])
        else:
            gens = vals
            used = {x: PRIMES[k + attempt] for k, x in enumerate(xs)}
            break
    if gens is None:
        raise PreconditionViolated("generic substitution kept vanishing after retries")
    out = {}
    for v in gens:
        pv = v.with_vars(ps)
        if pv.is_constant():
            continue
        pv = _normalize_generator(pv)
        out[pv] = None
    for d in extra:
        if not d.is_constant():
            out[_normalize_generator(d)] = None
    generators = sorted(out, key=lambda q: q.sort_key())
    if not generators:
        generators = [MultiPoly.const(ps, 1)]
    product = MultiPoly.const(ps, 1)
    for q in generators:
        product = product * q
    return SigmaSet(ps, generators, product, used)


def specialized_is_clean(f: MultiPoly, values: dict) -> bool:
    """f with the given variables substituted: no monomial factor and squarefree."""
    plain = {k: v for k, v in values.items() if k != "t"}
    spec = f.subs(plain) if plain else f
    if "t" in values:
        spec = spec.subs_t(values["t"])
    rest = tuple(v for v in f.vars if v not in plain)
    spec = spec.with_vars(rest)
    if spec.is_zero():
        return False
    return not has_monomial_factor(spec) and is_squarefree(spec)
