from fractions import Fraction

import pytest
import sympy

from defect_forge.algebra.multipoly import MultiPoly
from defect_forge.algebra.ops import divides
from defect_forge.algebra.parser import parse_forms, parse_poly
from defect_forge.degeneracy import (
    build_pi,
    degeneracy_locus,
    image_hypersurface,
    jacobian_det,
)
from defect_forge.errors import InvalidInput, NotInPosition, PreconditionViolated

from .oracles import to_sympy

PAIR = "x0^2 + x1^2\nx0^2 + x0*x1 + x1^2"
X2 = ("x0", "x1")
Y2 = ("y0", "y1")


def forms(text, nvars=None):
    return parse_forms(text, nvars=nvars)


def test_jacobian_of_linear_forms_is_constant():
    G = jacobian_det(forms("x0 + 2*x1\n3*x0 - x1"))
    assert G.is_constant() and G.constant_value() == -7


def test_jacobian_pair():
    assert jacobian_det(forms(PAIR)) == parse_poly("2*x0^2 - 2*x1^2", X2)


def test_jacobian_three_forms():
    assert jacobian_det(forms("x0\nx1\nx0^2 + x1^2 + x2^2")) == parse_poly("2*x2", ("x0", "x1", "x2"))


def test_jacobian_against_sympy():
    F = forms("x0^2 + x1*x2\nx1^3 - x0*x2^2 + x2^3\nx0 + x1 + 5*x2")
    xs = sympy.symbols("x0 x1 x2")
    M = sympy.Matrix([[sympy.diff(to_sympy(f), x) for x in xs] for f in F])
    assert sympy.expand(M.det() - to_sympy(jacobian_det(F))) == 0


def test_jacobian_dimension_mismatch():
    with pytest.raises(InvalidInput):
        jacobian_det(forms("x0\nx1\nx2")[:2])


@pytest.mark.parametrize("text,expected,d1", [
    ("x0\nx1\nx0^2 + x1^2 + x2^2", (2, 2, 1), 2),
    ("x0^2 + x1^2 + x2^2\nx0^3 + x1^3 + x2^3\nx0^4 + x1^4 + x2^4", (6, 4, 3), 12),
    (PAIR, (1, 1), 2),
])
def test_pi_exponents(text, expected, d1):
    pi = build_pi(forms(text))
    assert pi.exponents == expected and pi.common_degree == d1
    degs = {(f ** a).total_degree() for f, a in zip(pi.forms, pi.exponents)}
    assert degs == {d1}


def test_pi_requires_position():
    with pytest.raises(NotInPosition):
        build_pi(forms("x0\nx1\nx0 + x1", nvars=3))


@pytest.mark.parametrize("gt,A,H", [("x0 - x1", "3*y0 - 2*y1", "1"), ("x0 + x1", "y0 - 2*y1", "-1")])
def test_image_hypersurface_pair(gt, A, H):
    pi = build_pi(forms(PAIR))
    Gt = parse_poly(gt, X2)
    a, h = image_hypersurface(Gt, pi)
    assert a == parse_poly(A, Y2)
    assert h == parse_poly(H, X2)
    assert pi.pullback(a) == Gt * Gt * h
    assert pi.pullback(a).total_degree() == a.total_degree() * pi.common_degree


def test_image_hypersurface_coordinate_factor():
    F = forms("x0\nx1\nx0^2 + x1^2 + x2^2")
    pi = build_pi(F)
    V = F[0].vars
    a, h = image_hypersurface(parse_poly("x2", V), pi)
    assert a == parse_poly("y0 + y1 - y2", ("y0", "y1", "y2"))
    assert pi.pullback(a) == parse_poly("x2^2", V) * h


def test_image_hypersurface_rejects_constant():
    pi = build_pi(forms(PAIR))
    with pytest.raises(InvalidInput):
        image_hypersurface(MultiPoly.const(X2, 3), pi)


def test_worked_pair_pipeline():
    r = degeneracy_locus(forms(PAIR))
    assert r.A == parse_poly("3*y0 - 2*y1", Y2)
    assert r.H == MultiPoly.const(X2, 1)
    assert r.B0 == parse_poly("-18*y0^2*y1 + 12*y0*y1^2", Y2)
    assert r.B.total_degree() == 6 == r.degree_bound
    assert r.B.is_homogeneous() and not r.B.is_zero()
    assert r.epsilon == Fraction(1, 8)


def test_all_factors_multiplies():
    one = degeneracy_locus(forms(PAIR))
    both = degeneracy_locus(forms(PAIR), all_factors=True)
    assert len(both.runs) == 2
    assert divides(one.B, both.B)
    assert both.B.total_degree() <= both.degree_bound


def test_determinism():
    a = degeneracy_locus(forms(PAIR), all_factors=True)
    b = degeneracy_locus(forms(PAIR), all_factors=True)
    assert a.B == b.B and [r.Gtilde for r in a.runs] == [r.Gtilde for r in b.runs]


def test_plane_conic_pipeline():
    r = degeneracy_locus(forms("x0\nx1\nx0^2 + x1^2 + x2^2"), budget=3)
    assert r.Gtilde == parse_poly("x2", r.Gtilde.vars)
    assert r.pi.pullback(r.A) == r.Gtilde * r.Gtilde * r.H
    assert r.B.is_homogeneous() and r.B.total_degree() <= r.degree_bound
    assert r.budget_exhausted


def test_three_lines_fail_degree_hypothesis():
    with pytest.raises(PreconditionViolated):
        degeneracy_locus(forms("x0\nx1\nx2"))


def test_linear_pair_has_no_ramification():
    # two lines in P^1 already fail the degree sum; make sure nothing is emitted
    with pytest.raises(PreconditionViolated):
        degeneracy_locus(forms("x0 + x1\nx0 - x1"))


def test_reducible_form_rejected():
    with pytest.raises(PreconditionViolated):
        degeneracy_locus(forms("x0*x1\nx0^2 + x1^2"))


def test_conic_through_common_point_not_in_position():
    with pytest.raises(NotInPosition):
        degeneracy_locus(forms("x0\nx1\nx0*x2 + x1^2"))
