"""Weak general position and effective Nullstellensatz certificates.

For n+1 homogeneous forms Q_i in n+1 variables with only the trivial common
zero, every x_j^s lies in the ideal for s large.  A certificate records the
smallest such s together with R and polynomials P_ji such that
x_j^s * R = sum_i P_ji * Q_i for every j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .algebra.multipoly import MultiPoly
from .algebra.ratfunc import RatFunc, cnorm, plcm
from .errors import Inconclusive, InvalidInput, NotInPosition, ResourceLimit
from .linalg import Echelon, to_int_row

SAMPLE_BUDGET = 200


# --- monomials -----------------------------------------------------------------


def monomials_of_degree(n: int, d: int) -> list[tuple]:
    """Exponent tuples of total degree d in n variables, lexicographically descending."""
    if d < 0:
        return []
    if n == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return out


def rational_samples():
    """Rationals in order of increasing height: 0, 1, -1, 2, -2, 1/2, -1/2, ..."""
    yield Fraction(0)
    h = 1
    seen = {Fraction(0)}
    while True:
        batch = []
        for num in range(0, h + 1):
            for den in range(1, h + 1):
                if max(num, den) != h or gcd(num, den) != 1:
                    continue
                batch.append(Fraction(num, den))
        batch.sort(key=lambda q: (q.denominator, q.numerator))
        for q in batch:
            for v in (q, -q):
                if v not in seen:
                    seen.add(v)
                    yield v
        h += 1


# --- helpers ---------------------------------------------------------------------


def _check_forms(Q):
    if not Q:
        raise InvalidInput("no forms given")
    vars0 = Q[0].vars
    for q in Q:
        if q.vars != vars0:
            raise InvalidInput("forms must share one variable list")
        if q.is_zero() or q.is_constant():
            raise InvalidInput("forms must be nonconstant")
        if not q.is_homogeneous():
            raise InvalidInput(f"form {q} is not homogeneous")
    return vars0


def _specialize(q: MultiPoly, z0):
    """Evaluate coefficients at t = z0; None when a coefficient has a pole there."""
    try:
        return q.subs_t(z0)
    except ZeroDivisionError:
        return None


def _int_rows_for(forms, degree):
    """Macaulay rows mu*f (integer scaled) over the monomials of the given degree."""
    n = forms[0].nvars
    cols = {m: k for k, m in enumerate(monomials_of_degree(n, degree))}
    rows = []
    for f in forms:
        d = f.total_degree()
        base = to_int_row(dict(f.terms))
        for mu in monomials_of_degree(n, degree - d):
            rows.append({cols[tuple(a + b for a, b in zip(e, mu))]: c for e, c in base.items()})
    return rows, len(cols)


def has_only_trivial_zero(forms) -> bool:
    """Macaulay criterion for n+1 forms over Q in n+1 variables.

    The forms have no common zero besides the origin iff their multiples span
    all monomials of degree sum(d_i - 1) + 1.
    """
    from .linalg import rank

    D = sum(f.total_degree() - 1 for f in forms) + 1
    rows, ncols = _int_rows_for(forms, D)
    if rank(rows, ncols, "mod") == ncols:
        return True
    return rank(rows, ncols, "int") == ncols


@dataclass
class PositionWitness:
    z0: Fraction
    subsets_checked: int
    samples_tried: int


def check_weak_general_position(Q, budget: int = SAMPLE_BUDGET) -> PositionWitness:
    """Find a sample t = z0 at which every n+1 of the forms meet only at the origin."""
    vars0 = _check_forms(Q)
    n1 = len(vars0)
    if len(Q) < n1:
        raise InvalidInput(f"need at least {n1} forms in {n1} variables, got {len(Q)}")
    uses_t = any(q.has_t() for q in Q)
    subsets = list(combinations(range(len(Q)), n1))
    tried = 0
    admissible = 0
    last_bad = None
    for z0 in rational_samples():
        if tried >= budget:
            break
        tried += 1
        spec = [_specialize(q, z0) for q in Q] if uses_t else list(Q)
        if any(s is None or s.is_zero() for s in spec):
            continue
        admissible += 1
        ok = True
        for S in subsets:
            if not has_only_trivial_zero([spec[i] for i in S]):
                ok = False
                last_bad = S
                break
        if ok:
            return PositionWitness(z0, len(subsets), tried)
        if not uses_t:
            break
    if admissible == 0:
        raise Inconclusive(f"no admissible sample point among {tried} tried")
    raise NotInPosition(
        f"forms {list(last_bad)} share a nontrivial common zero at every sampled point",
        subset=last_bad,
    )


# --- certificates ------------------------------------------------------------------


@dataclass
class Certificate:
    variables: tuple
    s: int
    R: object
    P: list  # P[j][i]
    meta: dict = field(default_factory=dict)


@dataclass
class VerifyResult:
    ok: bool
    reason: str = ""
    failing_j: int | None = None

    def __bool__(self):
        return self.ok


def _system(Q, s):
    """Unknown columns (i, mu) and equation rows indexed by degree-s monomials."""
    n = Q[0].nvars
    unknowns = []
    for i, q in enumerate(Q):
        for mu in monomials_of_degree(n, s - q.total_degree()):
            unknowns.append((i, mu))
    mons = monomials_of_degree(n, s)
    row_of = {m: k for k, m in enumerate(mons)}
    rows = [dict() for _ in mons]
    for col, (i, mu) in enumerate(unknowns):
        for e, c in Q[i].terms.items():
            m = tuple(a + b for a, b in zip(e, mu))
            rows[row_of[m]][col] = c
    nc = len(unknowns)
    for j in range(n):
        m = tuple(s if k == j else 0 for k in range(n))
        rows[row_of[m]][nc + j] = Fraction(1)
    return unknowns, rows


def _scale_rows_int(rows):
    return [to_int_row(r) if r else r for r in rows]


def _eliminate(Q, s, mode):
    unknowns, rows = _system(Q, s)
    nc = len(unknowns)
    ech = Echelon(nc, "field" if mode == "field" else mode)
    if mode in ("int", "mod"):
        rows = _scale_rows_int(rows)
    for r in rows:
        ech.add_row(r)
    return unknowns, ech


def _solvable_modp(Q, s, tau=None) -> bool:
    if tau is not None:
        Q = [q.subs_t(tau) for q in Q]
    _, ech = _eliminate(Q, s, "mod")
    return not ech.inconsistent_rhs()


def _solve_exact(Q, s):
    """Exact solutions for all j, or None when some x_j^s is outside the ideal."""
    uses_t = any(q.has_t() for q in Q)
    unknowns, ech = _eliminate(Q, s, "field" if uses_t else "int")
    if ech.inconsistent_rhs():
        return None
    n = Q[0].nvars
    return unknowns, [ech.solve(j) for j in range(n)]


def _mod_screen_point(Q):
    """A value of t without poles for modular screening (None when no t occurs)."""
    if not any(q.has_t() for q in Q):
        return None
    for tau in (Fraction(7, 3), Fraction(11, 5), Fraction(-13, 4), Fraction(17, 6)):
        try:
            spec = [q.subs_t(tau) for q in Q]
        except ZeroDivisionError:
            continue
        if all(not x.is_zero() for x in spec):
            return tau
    return None


def _assemble(Q, s, unknowns, sols) -> Certificate:
    vars0 = Q[0].vars
    n = len(vars0)
    raw = [[dict() for _ in Q] for _ in range(n)]
    for j, sol in enumerate(sols):
        for col, v in sol.items():
            i, mu = unknowns[col]
            raw[j][i][mu] = v
    values = [c for row in raw for d in row for c in d.values()]
    # clear t-denominators, then rational denominators
    t_den = (Fraction(1),)
    for c in values:
        if isinstance(c, RatFunc) and len(c.den) > 1:
            t_den = plcm(t_den, c.den)
    scale = cnorm(RatFunc(t_den)) if len(t_den) > 1 else Fraction(1)
    den = 1
    for c in [scale] + [cnorm(c * scale) for c in values]:
        for x in _coeff_parts(c)[0]:
            den = lcm(den, x.denominator)
    scale = cnorm(scale * den)
    R = scale
    P = [
        [MultiPoly(vars0, {mu: c * scale for mu, c in raw[j][i].items()}) for i in range(len(Q))]
        for j in range(n)
    ]
    R, P = _normalize_content(R, P)
    return Certificate(vars0, s, R, P)


def _coeff_parts(c):
    """Coefficient list (ascending) and denominator of a coefficient."""
    if isinstance(c, RatFunc):
        return list(c.num), c.den
    return [Fraction(c)], (Fraction(1),)


def _normalize_content(R, P):
    """Divide R and all P by their common Z[t] content; make the leading coefficient of R positive."""
    from .algebra.zpoly import dup_gcd_int

    g = None
    for c in [R] + [c for row in P for p in row for c in p.terms.values()]:
        f = [int(x) for x in reversed(_coeff_parts(c)[0])]
        g = ([abs(f[0])] if len(f) == 1 else dup_gcd_int(f, f)) if g is None else dup_gcd_int(g, f)
        if len(g) == 1 and g[0] == 1:
            break
    sign = -1 if _coeff_parts(R)[0][-1] < 0 else 1
    if len(g) == 1:
        div = Fraction(g[0] * sign)
    else:
        div = cnorm(RatFunc(tuple(Fraction(x) for x in reversed(g))) * sign)
    if div == 1:
        return R, P
    inv = div.inverse() if isinstance(div, RatFunc) else 1 / div
    R = cnorm(R * inv)
    P = [[p.scale(inv) for p in row] for row in P]
    return R, P


def find_certificate(Q, s_cap: int | None = None, check_position: bool = True) -> Certificate:
    """Smallest-s certificate x_j^s * R = sum_i P_ji Q_i for n+1 forms in n+1 variables."""
    vars0 = _check_forms(Q)
    n = len(vars0)
    if len(Q) != n:
        raise InvalidInput(f"need exactly {n} forms in {n} variables, got {len(Q)}")
    witness = check_weak_general_position(Q) if check_position else None
    degs = [q.total_degree() for q in Q]
    cap = s_cap if s_cap is not None else sum(degs) - n + 1
    cap = max(cap, max(degs))
    tau = _mod_screen_point(Q)
    uses_t = any(q.has_t() for q in Q)
    s_lo = max(1, min(degs))
    # modular screening for the first candidate s
    cand = None
    for s in range(s_lo, cap + 1):
        if uses_t and tau is None:
            cand = s_lo
            break
        if _solvable_modp(Q, s, tau):
            cand = s
            break
    if cand is None:
        cand = cap
    # exact confirmation, moving up until success
    s = cand
    exact = _solve_exact(Q, s)
    while exact is None:
        s += 1
        if s > cap:
            raise ResourceLimit(f"no certificate with s <= {cap}", detail={"cap": cap})
        exact = _solve_exact(Q, s)
    # exact minimality: move down while s-1 still works
    while s - 1 >= s_lo:
        lower = _solve_exact(Q, s - 1)
        if lower is None:
            break
        s -= 1
        exact = lower
    unknowns, sols = exact
    cert = _assemble(Q, s, unknowns, sols)
    cert.meta = {
        "witness": str(witness.z0) if witness else None,
        "minimal_checked_at": s - 1 if s - 1 >= s_lo else None,
    }
    return cert


def solvable_at(Q, s: int) -> bool:
    """Exact test whether every x_j^s lies in the span of the degree-s multiples."""
    return _solve_exact(Q, s) is not None


def verify_certificate(Q, cert: Certificate) -> VerifyResult:
    """Expand every identity exactly and check degrees."""
    n = len(cert.variables)
    if len(cert.P) != n or any(len(row) != len(Q) for row in cert.P):
        return VerifyResult(False, "certificate dimensions do not match the forms")
    if any(q.vars != tuple(cert.variables) for q in Q):
        return VerifyResult(False, "variable lists differ")
    if cnorm(cert.R) == 0:
        return VerifyResult(False, "R is zero")
    for j in range(n):
        for i, q in enumerate(Q):
            p = cert.P[j][i]
            if p.is_zero():
                continue
            want = cert.s - q.total_degree()
            if not p.is_homogeneous() or p.total_degree() != want:
                return VerifyResult(False, f"P[{j}][{i}] does not have degree {want}", j)
        lhs = MultiPoly.monomial(cert.variables, tuple(cert.s if k == j else 0 for k in range(n)), cert.R)
        rhs = MultiPoly(cert.variables, {}, check=False)
        for i, q in enumerate(Q):
            rhs = rhs + cert.P[j][i] * q
        if lhs != rhs:
            return VerifyResult(False, f"identity for j={j} fails", j)
    return VerifyResult(True, "ok")
