from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.subresultants_qq_zz import sylvester

from defect_forge.algebra.factor import factorize, is_irreducible
from defect_forge.algebra.laurent import monomial_transform
from defect_forge.algebra.multipoly import MultiPoly
from defect_forge.algebra.ops import (
    has_monomial_factor,
    is_squarefree,
    poly_div_exact,
    poly_gcd,
    poly_resultant,
    squarefree_part,
)
from defect_forge.algebra.parser import parse_forms, parse_poly, parse_ratfunc
from defect_forge.algebra.ratfunc import RatFunc, cnorm
from defect_forge.errors import InvalidInput, ParseError, ResourceLimit
from defect_forge.lattice import UnimodularMatrix

from .oracles import to_sympy, univariate_irreducible

small = st.integers(-4, 4)
fractions_st = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def tpolys(draw, max_deg=3):
    return tuple(draw(st.lists(fractions_st, min_size=1, max_size=max_deg + 1)))


@st.composite
def ratfuncs(draw, nonzero=False):
    num = draw(tpolys())
    den = draw(tpolys().filter(lambda d: any(d)))
    if nonzero and not any(num):
        num = (Fraction(1),)
    return cnorm(RatFunc(num, den))


@st.composite
def bivariate(draw, vars_=("x0", "x1"), max_deg=3, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        c = draw(st.integers(-5, 5))
        if c:
            terms[e] = Fraction(c)
    return MultiPoly(vars_, terms)


# --- Q(t) -----------------------------------------------------------------------------


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ratfunc_ring_axioms(a, b, c):
    assert cnorm((a + b) + c) == cnorm(a + (b + c))
    assert cnorm((a * b) * c) == cnorm(a * (b * c))
    assert cnorm(a * (b + c)) == cnorm(a * b + a * c)


@given(ratfuncs(nonzero=True))
def test_ratfunc_inverse(a):
    a = RatFunc((a,)) if not isinstance(a, RatFunc) else a
    assert cnorm(a * a.inverse()) == 1


@given(ratfuncs(), ratfuncs())
def test_leibniz_rule(a, b):
    a = a if isinstance(a, RatFunc) else RatFunc((a,))
    b = b if isinstance(b, RatFunc) else RatFunc((b,))
    assert cnorm((a * b).deriv()) == cnorm(a.deriv() * b + a * b.deriv())


@given(ratfuncs(nonzero=True))
def test_quotient_rule(f):
    f = f if isinstance(f, RatFunc) else RatFunc((f,))
    lhs = f.inverse().deriv()
    rhs = -(f.deriv() * (f * f).inverse())
    assert cnorm(lhs) == cnorm(rhs)


def test_ratfunc_is_reduced_with_monic_denominator():
    r = parse_ratfunc("(2*t^2 - 2)/(4*t + 4)")
    assert r == parse_ratfunc("(t - 1)/2")


# --- parser -----------------------------------------------------------------------------


def test_parse_homogeneous_form():
    (p,) = parse_forms("x0^2 + x1^2")
    assert p.nvars == 2 and p.is_homogeneous() and p.total_degree() == 2


def test_parse_mixed_degrees_rejected():
    with pytest.raises(ParseError, match="mixed degrees 1,2"):
        parse_forms("x0 + x1^2", require_homogeneous=True)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_forms("x0 + x1\nx0 * * x1\n")
    assert info.value.line == 2
    assert info.value.column >= 1


def test_print_parse_round_trip_with_t_coefficients():
    p = parse_poly("(t^2+1)/(t-3)*x0^2 - 3/2*x0*x1 + t*x1^2")
    assert parse_poly(str(p), p.vars) == p


# --- resultants ---------------------------------------------------------------------------


def test_resultant_linear():
    p = parse_poly("x0 - x1", ("x0", "x1", "x2"))
    q = parse_poly("x0 - x2", ("x0", "x1", "x2"))
    assert poly_resultant(p, q, "x0") == parse_poly("x1 - x2", ("x0", "x1", "x2"))


def test_resultant_with_constant():
    p = parse_poly("x0^3 + 2*x0 + 1")
    assert poly_resultant(p, p.one(), "x0") == p.one()


def test_resultant_quadratic_against_derivative():
    # rows of x^2 - t first: det [[1,0,-t],[2,0,0],[0,2,0]] = -4t
    p = parse_poly("x0^2 - t")
    r = poly_resultant(p, p.diff("x0"), "x0")
    assert r == parse_poly("-4*t", p.vars)


def test_resultant_of_two_zeros_rejected():
    z = MultiPoly.const(("x0",), 0)
    with pytest.raises(InvalidInput):
        poly_resultant(z, z, "x0")


@given(bivariate(), bivariate())
def test_resultant_matches_sympy(p, q):
    if p.degree("x0") <= 0 or q.degree("x0") <= 0:
        return
    x0 = sympy.Symbol("x0")
    ours = to_sympy(poly_resultant(p, q, "x0"))
    # sympy.resultant gets the sign wrong for some degree pairs (Res(x+1, x^3)
    # comes back as 1); the determinant of its Sylvester matrix does not
    ref = sylvester(to_sympy(p), to_sympy(q), x0, 1).det()
    assert sympy.expand(ours - ref) == 0
    assert sympy.expand(ours - sympy.resultant(to_sympy(p), to_sympy(q), x0)) == 0 or \
        sympy.expand(ours + sympy.resultant(to_sympy(p), to_sympy(q), x0)) == 0


@given(bivariate(max_deg=3), bivariate(max_deg=2))
def test_resultant_vanishes_iff_common_factor(p, q):
    if p.degree("x0") <= 0 or q.degree("x0") <= 0:
        return
    x0 = sympy.Symbol("x0")
    g = sympy.gcd(to_sympy(p), to_sympy(q))
    shares = sympy.degree(g, x0) > 0
    assert poly_resultant(p, q, "x0").is_zero() == shares


# --- squarefree part and gcd ------------------------------------------------------------


def test_squarefree_examples():
    v = ("x0",)
    assert squarefree_part(parse_poly("x0", v)) == parse_poly("x0", v)
    p = parse_poly("(x0+1)^2*(x0-t)")
    assert squarefree_part(p) == parse_poly("(x0+1)*(x0-t)", p.vars)
    q = parse_poly("6*x0^2*x1")
    assert squarefree_part(q) == parse_poly("x0*x1", q.vars)


def test_squarefree_zero_rejected():
    with pytest.raises(InvalidInput):
        squarefree_part(MultiPoly.const(("x0",), 0))


@given(bivariate(max_terms=4), bivariate(max_terms=3))
def test_squarefree_part_properties(p, q):
    f = p * q * q
    if f.is_zero() or f.is_constant():
        return
    s = squarefree_part(f)
    assert poly_div_exact(f, s) is not None
    assert is_squarefree(s)
    # the joint gcd with all partials is constant (a single partial may share x_k with s)
    g = s
    for v in s.used_vars():
        g = poly_gcd(g, s.diff(v))
    assert g.is_constant()


@given(bivariate(), bivariate())
def test_gcd_matches_sympy(p, q):
    if p.is_zero() or q.is_zero():
        return
    g = poly_gcd(p, q)
    ref = sympy.gcd(to_sympy(p), to_sympy(q))
    ratio = sympy.simplify(to_sympy(g) / ref)
    assert ratio.is_number and ratio != 0


# --- factorization ----------------------------------------------------------------------


def test_factor_difference_of_squares():
    fz = factorize(parse_poly("x0^2 - 1"))
    assert sorted(str(f) for f, _ in fz.factors) == ["x0 + 1", "x0 - 1"]


def test_factor_x4_plus_1_irreducible():
    assert is_irreducible(parse_poly("x0^4 + 1"))
    assert univariate_irreducible([1, 0, 0, 0, 1])


def test_factor_binary_quadratic_irreducible():
    assert is_irreducible(parse_poly("x0^2 + x0*x1 + x1^2"))


def test_factor_over_qt():
    p = parse_poly("x0^2 - t^2")
    fz = factorize(p)
    assert len(fz.factors) == 2
    assert fz.expand(p) == p


def test_factor_degree_cap():
    with pytest.raises(ResourceLimit):
        factorize(parse_poly("x0^13*x1^13 + 1", ("x0", "x1")))
    with pytest.raises(ResourceLimit):
        factorize(parse_poly("x0^121 + 1", ("x0",)))


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=5))
def test_univariate_irreducibility_matches_oracle(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) < 2:
        return
    p = MultiPoly(("x0",), {(k,): Fraction(c) for k, c in enumerate(coeffs) if c})
    content = sympy.gcd_list([c for c in coeffs if c])
    if content != 1 and len(coeffs) > 1:
        p = p.primitive()
        coeffs = [c // int(content) for c in coeffs]
    assert is_irreducible(p) == univariate_irreducible(coeffs)


@given(bivariate(max_deg=2, max_terms=3), bivariate(max_deg=2, max_terms=3), bivariate(max_deg=1, max_terms=2))
def test_factorization_reproduces_input(a, b, c):
    p = a * b * c
    if p.is_zero():
        return
    fz = factorize(p)
    assert fz.expand(p) == p
    for f, _ in fz.factors:
        if f.total_degree() <= 4:
            assert sympy.factor_list(to_sympy(f))[1] and len(sympy.factor_list(to_sympy(f))[1]) == 1


# --- monomial transforms ------------------------------------------------------------------


def test_transform_identity():
    p = parse_poly("x1^2 + x1*x2 + 3")
    lf = monomial_transform(p, UnimodularMatrix.identity(2), "inverse", p.vars)
    assert lf.monomial == (0, 0)
    assert lf.core == p


def test_transform_step_example():
    p = parse_poly("x1 + x2")
    lf = monomial_transform(p, UnimodularMatrix([[1, 1], [0, 1]]), "forward")
    assert lf.monomial == (0, -1)
    assert lf.core == parse_poly("L + X2^2", ("L", "X2"))


def test_transform_monomial_maps_to_monomial():
    p = parse_poly("x1*x2")
    A = UnimodularMatrix([[2, 1], [1, 1]])
    lf = monomial_transform(p, A, "forward")
    assert lf.core.is_constant()
    assert lf.monomial == A.inverse().apply_row((1, 1))


def test_transform_rejects_singular_matrix():
    with pytest.raises(InvalidInput):
        monomial_transform(parse_poly("x1 + x2"), [[2, 0], [0, 1]])


@st.composite
def unimodular2(draw):
    a, b = draw(small), draw(small)
    # upper and lower shears compose into a generic unimodular matrix
    return UnimodularMatrix([[1 + a * b, a], [b, 1]])


@given(bivariate(vars_=("x1", "x2"), max_deg=3), unimodular2())
def test_transform_round_trip(p, A):
    if p.is_zero():
        return
    fwd = monomial_transform(p, A, "forward", ("u", "v"))
    back = monomial_transform(fwd.core, A, "inverse", p.vars)
    # recovers p up to a monomial unit
    ref = monomial_transform(p, UnimodularMatrix.identity(2), "inverse", p.vars).core
    assert back.core == ref
    assert not has_monomial_factor(back.core)


def test_univariate_high_degree_factorization():
    p = parse_poly("(x0^9 - 2)*(x0^9 + x0 + 1)*(x0^9 - 3*x0 + 5)*(x0 - 1)^2", ("x0",))
    fz = factorize(p)
    ref = sympy.factor_list(to_sympy(p))[1]
    assert sorted((f.total_degree(), m) for f, m in fz.factors) == sorted(
        (sympy.degree(f), m) for f, m in ref)


def test_resultant_sign_linear_against_cubic():
    V = ("x0",)
    # Sylvester determinant; equals (-1)^(1*3) * Res(x0^3, x0 + 1) = -1
    assert poly_resultant(parse_poly("x0 + 1", V), parse_poly("x0^3", V), "x0").constant_value() == -1
    assert poly_resultant(parse_poly("x0^3", V), parse_poly("x0 + 1", V), "x0").constant_value() == 1
