import random
import zlib
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defect_forge.algebra.multipoly import MultiPoly
from defect_forge.algebra.ops import has_monomial_factor, is_squarefree, poly_gcd
from defect_forge.algebra.parser import parse_poly
from defect_forge.errors import InvalidInput, NotInPosition, PreconditionViolated
from defect_forge.exceptional import (
    M_constant,
    build_H,
    build_Z_n2,
    build_Z_projective,
    c_constant,
    gcd_params,
    subsum_forms,
)
from defect_forge.specialization import compute_sigma

from .oracles import findm_holds

V3 = ("x0", "x1", "x2")


def P(s, vars_=V3):
    return parse_poly(s, vars_)


# --- gcd_params -----------------------------------------------------------------


def test_constants_at_small_m():
    assert c_constant(4, 2, 1) == 16
    assert M_constant(4, 2, 1) == 14


@pytest.mark.parametrize("n,d", [(2, 1), (2, 3), (3, 1), (4, 2)])
def test_c_at_twice_d(n, d):
    assert c_constant(2 * d, n, d) == 2 * comb(d + n, n + 1)


def test_small_instance_is_minimal():
    gp = gcd_params(2, 2, Fraction(1, 10), 1)
    assert gp.m >= 4
    assert findm_holds(2, 2, Fraction(1, 10), 1, gp.m)
    assert gp.m == 4 or not findm_holds(2, 2, Fraction(1, 10), 1, gp.m - 1)
    assert gp.M_prime == 1 and gp.C1 == gp.m * Fraction(1, 10)


@settings(max_examples=25)
@given(st.integers(2, 4), st.integers(1, 3), st.sampled_from(["1/2", "1/5", "1/10", "1"]),
       st.sampled_from(["1", "1/2", "3"]))
def test_minimality_against_oracle(n, d, eps, kappa):
    gp = gcd_params(n, d, eps, kappa)
    assert gp.m >= 2 * d
    assert findm_holds(n, d, eps, kappa, gp.m)
    if gp.m > 2 * d:
        assert not findm_holds(n, d, eps, kappa, gp.m - 1)
    assert all(r <= 0 for r in gp.residuals)


def test_gcd_params_validation():
    for args in [(1, 1, 1), (2, 0, 1), (2, 1, 0), (2, 1, -1)]:
        with pytest.raises(InvalidInput):
            gcd_params(*args)
    with pytest.raises(InvalidInput):
        gcd_params(2, 1, 1, kappa=0)
    assert gcd_params(2, 1, 1, L=7).L == 7


# --- build_H --------------------------------------------------------------------

A2 = ("x1", "x2")


def test_sigma_of_lambda_plus_square():
    sig = compute_sigma(parse_poly("L + T^2", ("L", "T")), params=["L"])
    assert [str(g) for g in sig.generators] == ["L"]


def test_single_matrix_run():
    G = parse_poly("x1 + x2", A2)
    # core becomes L1 + X^3; its obstruction L1 pulls back to x1*x2^2, radical x1*x2
    r = build_H(G, Fraction(1, 10), budget=5, matrices=[[[1, 2], [0, 1]]])
    assert not r.budget_exhausted
    assert [str(f.sigma) for f in r.factors] == ["L1"]
    assert r.H == parse_poly("x1*x2", A2)


def test_zero_budget():
    r = build_H(parse_poly("x1 + x2 + 1", A2), Fraction(1, 10), budget=0)
    assert r.H == MultiPoly.const(A2, 1)
    assert r.budget_exhausted


def test_repeated_factor_rejected():
    with pytest.raises(PreconditionViolated):
        build_H(parse_poly("(x1 + x2 + 1)^2", A2), Fraction(1, 10))
    with pytest.raises(PreconditionViolated):
        build_H(parse_poly("x1*(x2 + 1)", A2), Fraction(1, 10))


def test_budget_truncation_is_prefix():
    G = parse_poly("x1^2 + x2 + 1", A2)
    small = build_H(G, Fraction(1, 10), budget=4)
    big = build_H(G, Fraction(1, 10), budget=12)
    assert small.budget_exhausted and big.budget_exhausted
    small_polys = {f.poly for f in small.factors}
    assert small_polys <= {f.poly for f in big.factors}
    assert all(not f.poly.is_constant() for f in big.factors)


# --- build_Z_projective ---------------------------------------------------------


def _w(desc):
    return sorted(str(p) for t, p in desc.polynomials if t == "W")


def test_linear_subsums():
    d = build_Z_projective(P("x0 + x1 + x2"), Fraction(1, 10), budget=2)
    assert _w(d) == sorted(["x0", "x1", "x2", "x0 + x1", "x0 + x2", "x1 + x2"])
    assert [str(p) for t, p in d.polynomials if t == "F"] == ["x0 + x1 + x2"]


def test_two_monomials():
    F = parse_poly("3*y0 - 2*y1", ("y0", "y1"))
    d = build_Z_projective(F, Fraction(1, 10))
    assert sorted(str(p.primitive()) for t, p in d.polynomials if t == "W") == ["y0", "y1"]
    assert sorted(str(p) for t, p in d.polynomials if t == "W") == ["-2*y1", "3*y0"]


def test_quadric_small_budget():
    F = P("x0*x1 + x1*x2 + x2*x0")
    d = build_Z_projective(F, Fraction(1, 10), budget=3)
    assert d.budget_exhausted
    assert d.kind == "FullZ"
    assert all(not p.is_zero() for _, p in d.polynomials)
    assert any(t.startswith("H") for t, _ in d.polynomials)
    # subsum forms re-expand to F
    assert sum((p for p in subsum_forms(F) if len(p.terms) == 1), F.zero()) == F


def test_stable_under_term_order():
    F = P("x0*x1 + x1*x2 + x2*x0 + x0^2")
    G = MultiPoly(V3, dict(reversed(list(F.terms.items()))))
    a = build_Z_projective(F, Fraction(1, 2), budget=6)
    b = build_Z_projective(G, Fraction(1, 2), budget=6)
    assert [(t, str(p)) for t, p in a.polynomials] == [(t, str(p)) for t, p in b.polynomials]


def test_homogenization_round_trip():
    F = P("x0^2 + x1^2 + x2^2 + x1*x2")
    d = build_Z_projective(F, Fraction(1, 2), budget=5)
    for t, p in d.polynomials:
        if t.startswith("H"):
            assert p.dehomogenize("x0").homogenize("x0") == p
            assert p.is_homogeneous()


def test_projective_preconditions():
    with pytest.raises(PreconditionViolated):
        build_Z_projective(P("x0^2 + x1"), Fraction(1, 10))
    with pytest.raises(PreconditionViolated):
        build_Z_projective(P("x0*(x1 + x2)"), Fraction(1, 10))


# --- build_Z_n2 -----------------------------------------------------------------


def test_lambda_plus_t_squared():
    d = build_Z_n2(P("x0^3 + x1*x2^2"), (1, 0), check_position=False)
    r = d.n2
    assert str(r.B) == "T^2 + L"
    assert r.gamma == [0] and r.alpha == [0]
    assert r.bezout == (1, 0)
    assert d.kind == "N2List"


def test_identity_relation_substitution():
    # relation (1, 0): L is x1/x0 and T is a power of x2/x0 (the inverse here)
    d = build_Z_n2(P("x0^2 + x1^2 + x2^2 + x1*x2"), (1, 0))
    B = d.n2.B
    assert B == parse_poly("L^2*T^2 + L*T + T^2 + 1", ("L", "T"))


def test_requires_position_and_primitive_relation():
    with pytest.raises(NotInPosition):
        build_Z_n2(P("x0^3 + x1*x2^2"), (1, 0))
    with pytest.raises(PreconditionViolated):
        build_Z_n2(P("x0^2 + x1^2 + x2^2"), (2, 4))


def _fails(B, lam):
    h = B.subs({"L": lam}).with_vars(("T",))
    return h.is_zero() or has_monomial_factor(h) or not is_squarefree(h)


FORMS = ["x0^2 + x1^2 + x2^2 + x1*x2", "x0^3 + x1^3 + x2^3 - 3*x0*x1*x2",
         "x0^2 + x1^2 - x2^2 + x0*x1 + x1*x2"]
RELATIONS = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]


@pytest.mark.parametrize("form", FORMS)
@pytest.mark.parametrize("rel", RELATIONS)
def test_n2_soundness(form, rel):
    r = build_Z_n2(P(form), rel).n2
    listed = set(r.gamma) | set(r.alpha) | set(r.R) | set(r.degree_drop)
    for lam in r.alpha:
        g = poly_gcd(r.B.subs({"L": lam}).with_vars(("T",)), r.B.subs({"L": lam}).with_vars(("T",)).diff("T"))
        assert _fails(r.B, lam) and (not g.is_constant() or has_monomial_factor(r.B.subs({"L": lam})))
    for lam in r.gamma:
        assert _fails(r.B, lam)
    rng = random.Random(zlib.crc32(f"{form}{rel}".encode()))
    seen = 0
    while seen < 20:
        lam = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        if lam in listed:
            continue
        if any(f.subs({"L": lam}).is_zero() for _, f in r.implicit if f.vars == ("L",)):
            continue
        seen += 1
        assert not _fails(r.B, lam), lam


def test_curves_are_homogeneous_binomials():
    d = build_Z_n2(P("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2"), (2, 1))
    for lam, c in d.n2.curves:
        assert lam != 0
        assert c.is_homogeneous() and len(c.terms) == 2
