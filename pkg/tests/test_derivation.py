import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from defect_forge.algebra.multipoly import MultiPoly
from defect_forge.algebra.parser import parse_poly, parse_ratfunc
from defect_forge.derivation import (
    Coprime,
    MonomialRelation,
    Realization,
    UModel,
    du_apply,
    du_coprime,
    eval_at_u,
)
from defect_forge.errors import InvalidInput, PreconditionViolated

V2 = ("x1", "x2")


def model(*ells):
    return UModel(len(ells), [parse_ratfunc(e) for e in ells])


def P(s, vars_=V2):
    return parse_poly(s, vars_)


def test_single_monomial():
    u = model("1/t", "t")
    assert du_apply(P("x1*x2"), u) == P("(1/t + t)*x1*x2")


def test_coefficient_derivative():
    u = model("t^2", "3")
    assert du_apply(P("t*x1"), u) == P("(1 + t^3)*x1")


def test_termwise():
    u = model("t", "1/(t+1)")
    assert du_apply(P("x1 + x2"), u) == P("t*x1 + 1/(t+1)*x2")


def test_dimension_mismatch():
    with pytest.raises(InvalidInput):
        du_apply(P("x1 + x2"), model("1"))


def test_coprime_generic():
    assert du_coprime(P("x1^2 - x2"), model("1", "t")) == Coprime()


def test_relation_for_equal_log_derivatives():
    r = du_coprime(P("x1 - x2"), model("t", "t"))
    assert isinstance(r, MonomialRelation)
    assert r.exponents == (1, -1)


def test_monomial_is_precondition_violation():
    with pytest.raises(PreconditionViolated):
        du_coprime(P("x1"), model("1", "t"))


def test_relation_bound():
    # x1^2 - x2 is annihilated when l2 = 2 l1: u2 / u1^2 is constant
    r = du_coprime(P("x1^2 - x2"), model("t", "2*t"))
    assert isinstance(r, MonomialRelation)
    assert r.exponents == (2, -1)
    assert sum(abs(x) for x in r.exponents) <= 2 * 2


def test_realization_must_match():
    with pytest.raises(InvalidInput):
        UModel(1, [Fraction(2)], [Realization((Fraction(0), Fraction(1)), Fraction(1))])


coef = st.integers(-3, 3).map(Fraction)


@st.composite
def polys(draw, max_deg=2):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        e = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        c = draw(st.sampled_from(["1", "t", "t^2 - 1", "1/(t+2)", "3"]))
        terms[e] = parse_ratfunc(c) * draw(st.integers(-2, 2))
    return MultiPoly(V2, {e: c for e, c in terms.items() if c != 0})


ell_st = st.sampled_from(["0", "1", "t", "1/t", "2*t + 1", "1/(t^2 + 1)"])


@given(polys(), polys(), ell_st, ell_st)
def test_product_rule(F, G, a, b):
    u = model(a, b)
    assert du_apply(F * G, u) == du_apply(F, u) * G + F * du_apply(G, u)


@given(polys(), polys(), ell_st, ell_st, st.integers(-3, 3))
def test_linearity_over_constants(F, G, a, b, c):
    u = model(a, b)
    assert du_apply(F + G.scale(c), u) == du_apply(F, u) + du_apply(G, u).scale(c)


def _random_realization(rng):
    p = tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 3)))
    q = parse_ratfunc(rng.choice(["1", "t + 2", "1/(t + 3)", "t^2 + 1", "(t - 4)/(t + 5)"]))
    return Realization(p, q)


def test_value_identity_by_finite_differences():
    rng = random.Random(99)
    h = 1e-5
    for _ in range(10):
        u = UModel.from_realization([_random_realization(rng), _random_realization(rng)])
        F = P(rng.choice(["x1^2 + t*x2", "x1*x2 - 1", "(t+1)*x1 + x2^2 - 3", "x1^2*x2 + x2/(t+7)"]))
        DF = du_apply(F, u)
        for _ in range(20):
            z = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            fd = (eval_at_u(F, u, z + h) - eval_at_u(F, u, z - h)) / (2 * h)
            exact = eval_at_u(DF, u, z)
            assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))
