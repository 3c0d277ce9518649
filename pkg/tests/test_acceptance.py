"""The ten acceptance criteria, one test each.

Each test records a ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (shown in the pytest terminal summary and printed when this file is run
as a script) before asserting.
"""

import cmath
import itertools
import math
import random
import sys
import time
from fractions import Fraction
from functools import reduce
from math import gcd

from defect_forge.algebra.multipoly import MultiPoly
from defect_forge.algebra.ops import has_monomial_factor, is_squarefree, poly_div_exact
from defect_forge.algebra.parser import parse_forms, parse_poly, parse_ratfunc
from defect_forge.degeneracy import build_pi, image_hypersurface, jacobian_det
from defect_forge.derivation import Realization, UModel, du_apply, eval_at_u
from defect_forge.errors import CurveOnDivisor
from defect_forge.exceptional import M_constant, build_Z_n2, c_constant, gcd_params
from defect_forge.lattice import extend_to_basis, int_det, satisfies_bound
from defect_forge.nullstellensatz import find_certificate, solvable_at, verify_certificate
from defect_forge.numerics.expsum import ExpSum, divisor_on_curve, parse_curve
from defect_forge.numerics.nevanlinna import (
    characteristic,
    counting_from_zeros,
    defect_report,
    gcd_counting,
)
from defect_forge.numerics.zeros import Zero, locate_zeros
from defect_forge.specialization import compute_sigma, specialized_is_clean

from .oracles import brute_force_completion, findm_holds
from .test_nullstellensatz import random_system
from .test_specialization import _random_f

RESULTS: dict = {}


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    assert ok, RESULTS[n]


def test_criterion_1_nullstellensatz_suite():
    rng = random.Random(101)
    worst = 0.0
    ok = True
    for k in range(10):
        n = 1 + k % 3
        Q = random_system(rng, n, 3 if n < 3 else 2)
        t = time.perf_counter()
        c = find_certificate(Q)
        good = bool(verify_certificate(Q, c)) and (c.s == 1 or not solvable_at(Q, c.s - 1))
        worst = max(worst, time.perf_counter() - t)
        ok = ok and good
    record(1, ok and worst < 60, f"10 random systems verified and minimal, slowest {worst:.2f}s")


def test_criterion_2_worked_pipeline():
    t = time.perf_counter()
    F = parse_forms("x0^2 + x1^2\nx0^2 + x0*x1 + x1^2")
    X, Y = F[0].vars, ("y0", "y1")
    G = jacobian_det(F)
    ok = G == parse_poly("2*(x0 - x1)*(x0 + x1)", X)
    pi = build_pi(F)
    Gt = parse_poly("x0 - x1", X)
    A, H = image_hypersurface(Gt, pi)
    ok = ok and A.primitive() == parse_poly("3*y0 - 2*y1", Y).primitive()
    pb = pi.pullback(A)
    ok = ok and pb == Gt * Gt and H == MultiPoly.const(X, 1)
    ok = ok and poly_div_exact(pb, Gt * Gt) == H
    dt = time.perf_counter() - t
    record(2, ok and dt < 5, f"G = {G}, A = {A}, H = {H}, {dt:.2f}s")


def test_criterion_3_gcd_params():
    ok = c_constant(4, 2, 1) == 16 and M_constant(4, 2, 1) == 14
    ms = []
    for n, d, eps in [(2, 1, Fraction(1, 2)), (2, 2, Fraction(1, 10)), (3, 2, Fraction(1, 10))]:
        m = gcd_params(n, d, eps, 1).m
        ms.append(m)
        ok = ok and findm_holds(n, d, eps, 1, m) and (m == 2 * d or not findm_holds(n, d, eps, 1, m - 1))
    record(3, ok, f"m = {ms}, minimal by independent re-evaluation; c(4,2,1) = 16, M = 14")


def test_criterion_4_lattice():
    rng = random.Random(404)
    good = 0
    for _ in range(1000):
        n = rng.randint(2, 5)
        while True:
            v = [rng.randint(-50, 50) for _ in range(n)]
            if reduce(gcd, v, 0) == 1:
                break
        A = extend_to_basis(v)
        good += A.rows[0] == tuple(v) and abs(int_det(A.rows)) == 1 and satisfies_bound(A, v)
    agree = 0
    boxes = list(itertools.product(range(-6, 7), repeat=2)) + \
        [tuple(rng.randint(-6, 6) for _ in range(3)) for _ in range(60)]
    for m in boxes:
        primitive = reduce(gcd, m, 0) == 1
        agree += (brute_force_completion(m) is not None) == primitive
    record(4, good == 1000 and agree == len(boxes),
           f"{good}/1000 random vectors valid, oracle agreement {agree}/{len(boxes)}")


def test_criterion_5_specialization():
    rng = random.Random(505)
    trials = clean = 0
    for _ in range(100):
        f, ps = _random_f(rng)
        sig = compute_sigma(f, params=ps)
        hits = 0
        while hits < 20:
            vals = {p: Fraction(rng.randint(-12, 12), rng.randint(1, 5)) for p in ps}
            if not sig.admissible(vals):
                continue
            hits += 1
            trials += 1
            clean += specialized_is_clean(f, vals)
    record(5, clean == trials == 2000, f"{clean}/{trials} admissible specializations clean")


def _du_poly(rng, V):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        e = (rng.randint(0, 2), rng.randint(0, 2))
        c = parse_ratfunc(rng.choice(["1", "t", "t^2 - 1", "1/(t+2)", "3"])) * rng.randint(-2, 2)
        terms[e] = c
    return MultiPoly(V, {e: c for e, c in terms.items() if c != 0})


def test_criterion_6_du_algebra():
    rng = random.Random(606)
    V = ("x1", "x2")
    ells = ["0", "1", "t", "1/t", "2*t + 1", "1/(t^2 + 1)"]
    prod_ok = 0
    for _ in range(200):
        u = UModel(2, [parse_ratfunc(rng.choice(ells)) for _ in range(2)])
        F, G = _du_poly(rng, V), _du_poly(rng, V)
        prod_ok += du_apply(F * G, u) == du_apply(F, u) * G + F * du_apply(G, u)
    worst = 0.0
    h = 1e-5
    for _ in range(10):
        reals = []
        for _ in range(2):
            p = tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 3)))
            q = parse_ratfunc(rng.choice(["1", "t + 2", "1/(t + 3)", "t^2 + 1", "(t - 4)/(t + 5)"]))
            reals.append(Realization(p, q))
        u = UModel.from_realization(reals)
        F = parse_poly(rng.choice(["x1^2 + t*x2", "x1*x2 - 1", "(t+1)*x1 + x2^2 - 3"]), V)
        DF = du_apply(F, u)
        for _ in range(20):
            z = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            fd = (eval_at_u(F, u, z + h) - eval_at_u(F, u, z - h)) / (2 * h)
            exact = eval_at_u(DF, u, z)
            worst = max(worst, abs(fd - exact) / max(1.0, abs(exact)))
    record(6, prod_ok == 200 and worst <= 1e-6,
           f"product rule {prod_ok}/200, worst value-identity error {worst:.1e} over 200 points")


def test_criterion_7_numerics():
    curve = parse_curve("1\nexp(z)\n")
    worst = 0.0
    for r in range(10, 51, 5):
        worst = max(worst, abs(characteristic(curve, float(r)) / (r / math.pi) - 1))
    h = ExpSum.parse("exp(z) - 1")
    counts_ok = all(
        sum(z.multiplicity for z in locate_zeros(h, float(r))) == 2 * math.floor(r / (2 * math.pi)) + 1
        for r in range(1, 51)
    )
    g = max(gcd_counting(h, ExpSum.parse("exp(z) + 1"), float(r)) for r in (10, 25, 50))
    record(7, worst <= 0.02 and counts_ok and g == 0.0,
           f"T relative error <= {worst:.1e} on [10,50], zero counts exact for r = 1..50, N_gcd = {g}")


def _closed_form_zeros(R):
    out = []
    K = int((R + 2) ** 2 / (2 * math.pi)) + 2
    for k in range(-K, K + 1):
        s = cmath.sqrt(1 + 2j * math.pi * k)
        for z in (1 + s, 1 - s):
            if abs(z) <= R:
                out.append(Zero(z, 1))
    return out


def test_criterion_8_defect_experiment():
    t = time.perf_counter()
    f = parse_curve("1\nexp(z)\nexp(z^2)\n")
    divs = parse_forms("x0\nx1\nx0*x2 - x1^2", nvars=3)
    tab = defect_report(f, divs, [10.0, 20.0, 30.0, 40.0])
    d1, d2, d3 = (row.delta[-1] for row in tab.rows)
    oracle = 1 - counting_from_zeros(_closed_form_zeros(40.0), 40.0) / (2 * tab.T[-1])
    dt = time.perf_counter() - t
    ok = (d1 == 1.0 and d2 == 1.0 and 0.35 <= d3 <= 0.65 and d1 + d2 + d3 <= 2.9
          and abs(d3 - oracle) < 1e-6 and dt < 600)
    record(8, ok, f"delta = ({d1:.3f}, {d2:.3f}, {d3:.4f}), closed-form delta_3 = {oracle:.4f}, {dt:.1f}s")


def test_criterion_9_exceptional_consistency():
    f = parse_curve("1\nexp(z)\nexp(2*z)\n")
    D = parse_poly("x0*x2 - x1^2", ("x0", "x1", "x2"))
    raised = False
    try:
        divisor_on_curve(f, D)
    except CurveOnDivisor:
        raised = True
    vanishes = f.compose(D).is_zero()
    record(9, raised and vanishes, "curve [1:e^z:e^{2z}] lies on x0*x2 - x1^2: CurveOnDivisor raised")


N2_CORPUS = [(f, r) for f in ["x0^2 + x1^2 + x2^2 + x1*x2", "x0^3 + x1^3 + x2^3 - 3*x0*x1*x2",
                              "x0^2 + x1^2 - x2^2 + x0*x1 + x1*x2", "x0^3 + x1^3 + 2*x2^3 + x0*x1*x2"]
             for r in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)]]


def _fails(B, lam):
    h = B.subs({"L": lam}).with_vars(("T",))
    return h.is_zero() or has_monomial_factor(h) or not is_squarefree(h)


def test_criterion_10_n2_soundness():
    rng = random.Random(1010)
    emitted = emitted_ok = sampled = sampled_ok = 0
    for form, rel in N2_CORPUS:
        r = build_Z_n2(parse_poly(form, ("x0", "x1", "x2")), rel).n2
        for lam in set(r.gamma) | set(r.alpha):
            emitted += 1
            emitted_ok += _fails(r.B, lam)
        listed = set(r.gamma) | set(r.alpha) | set(r.R) | set(r.degree_drop)
        seen = 0
        while seen < 20:
            lam = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
            if lam in listed:
                continue
            seen += 1
            sampled += 1
            sampled_ok += not _fails(r.B, lam)
    record(10, emitted_ok == emitted and sampled_ok == sampled,
           f"{emitted_ok}/{emitted} emitted lambda fail, {sampled_ok}/{sampled} random lambda pass "
           f"over {len(N2_CORPUS)} cases")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if all(v.startswith("PASS") for v in RESULTS.values()) else 1)
