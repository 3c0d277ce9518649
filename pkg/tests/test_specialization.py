import random
from fractions import Fraction

import pytest

from defect_forge.algebra.multipoly import MultiPoly
from defect_forge.algebra.ops import has_monomial_factor, is_squarefree
from defect_forge.algebra.parser import parse_poly
from defect_forge.errors import InvalidInput, PreconditionViolated
from defect_forge.specialization import compute_sigma, specialized_is_clean


def test_square_root_of_t():
    sig = compute_sigma(parse_poly("x0^2 - t"))
    assert [str(g) for g in sig.generators] == ["t"]
    assert not sig.admissible({"t": 0})
    assert not specialized_is_clean(parse_poly("x0^2 - t"), {"t": 0})


def test_quadratic_discriminant():
    f = parse_poly("x0^2 + x0 + t")
    sig = compute_sigma(f)
    assert not specialized_is_clean(f, {"t": Fraction(1, 4)})
    assert not specialized_is_clean(f, {"t": 0})  # x0*(x0+1): monomial factor
    assert {str(g) for g in sig.generators} == {"t", "4*t - 1"}


def test_monomial_factor_rejected():
    with pytest.raises(PreconditionViolated):
        compute_sigma(parse_poly("t*x0"))


def test_repeated_factor_rejected():
    with pytest.raises(PreconditionViolated):
        compute_sigma(parse_poly("(x0 + t)^2"))


def test_constant_in_x_rejected():
    with pytest.raises(InvalidInput):
        compute_sigma(parse_poly("L1 + 1"), params=["L1"])


def test_explicit_parameters_and_determinism():
    f = parse_poly("x1^2 + L1*x1*x2 + x2^2 + L2")
    a = compute_sigma(f, params=["L1", "L2"])
    b = compute_sigma(f, params=["L1", "L2"])
    assert a.generators == b.generators
    assert a.params == ("L1", "L2")
    assert all(not g.is_zero() for g in a.generators)
    prod = MultiPoly.const(a.params, 1)
    for g in a.generators:
        prod = prod * g
    assert prod == a.product


def _random_f(rng):
    r = rng.randint(1, 2)
    q = rng.randint(1, 2)
    xs = tuple(f"x{i + 1}" for i in range(r))
    ps = tuple(f"L{i + 1}" for i in range(q))
    vars_ = xs + ps
    while True:
        terms = {}
        for _ in range(rng.randint(2, 5)):
            e = [0] * len(vars_)
            budget = rng.randint(1, 4)
            for _ in range(budget):
                e[rng.randrange(len(vars_))] += 1
            terms[tuple(e)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        f = MultiPoly(vars_, terms)
        if f.is_zero() or all(f.degree(x) <= 0 for x in xs):
            continue
        if has_monomial_factor(f) or not is_squarefree(f):
            continue
        return f, list(ps)


def test_degree_bound_and_soundness_sample():
    rng = random.Random(2024)
    for _ in range(25):
        f, ps = _random_f(rng)
        sig = compute_sigma(f, params=ps)
        bound = (2 * f.total_degree()) ** 2
        assert all(g.total_degree() <= bound for g in sig.generators)
        hits = 0
        while hits < 8:
            vals = {p: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for p in ps}
            if not sig.admissible(vals):
                continue
            hits += 1
            assert specialized_is_clean(f, vals), (f, vals)
