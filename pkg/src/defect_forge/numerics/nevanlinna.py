"""Nevanlinna functionals of exp-polynomial curves at finite radius.

T is the Cartan characteristic, normalized so that T(0) = 0:

    T(r) = (1/2pi) int log max_i |f_i(r e^{i theta})| dtheta - log max_i |f_i(0)|.

Counting functions come from explicit zero lists; proximity functions come
from quadrature of log(||f||^d / |D(f)|), so the First Main Theorem residual
m + N - d T is an independent consistency check (it is constant in r).
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..algebra.multipoly import MultiPoly
from ..errors import CurveOnDivisor, InvalidInput
from .expsum import CurveSpec, Evaluator, ExpSum, divisor_on_curve
from .quadrature import gauss_kronrod
from .zeros import Zero, locate_zeros

log = logging.getLogger(__name__)

RTOL = 1e-8
ORIGIN = 1e-9
MATCH_TOL = 1e-9
CIRCLE_SHIFT = 1e-9


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("DEFECT_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def _circle(r: float):
    return lambda th: r * np.exp(1j * th)


def circle_mean(fun, r: float, rtol: float = RTOL) -> float:
    """(1/2pi) int_0^{2pi} fun(r e^{i theta}) dtheta for a vectorized fun of z."""
    z = _circle(r)
    val, _ = gauss_kronrod(lambda th: fun(z(th)), 0.0, 2 * math.pi, rtol=rtol)
    return val / (2 * math.pi)


def _safe_radius(r: float, zeros) -> float:
    # zeros on the integration circle only cost accuracy; step off them
    while any(abs(abs(q.z) - r) < CIRCLE_SHIFT for q in zeros):
        r += CIRCLE_SHIFT
    return r


def characteristic(f: CurveSpec, r: float, r0: float = 0.0) -> float:
    if r < 0:
        raise InvalidInput("radius must be nonnegative")
    base = float(f.log_norm(0.0)[0]) if r0 == 0 else circle_mean(f.log_norm, r0)
    if r == 0:
        return 0.0 if r0 == 0 else -base
    return circle_mean(f.log_norm, r) - base


def counting_from_zeros(zeros, r: float, k: int | None = None) -> float:
    total = 0.0
    for q in zeros:
        a = abs(q.z)
        if a > r:
            continue
        m = q.multiplicity if k is None else min(q.multiplicity, k)
        total += m * math.log(r) if a < ORIGIN else m * math.log(r / a)
    return total


def counting(f: CurveSpec, D: MultiPoly, r: float, k: int | None = None) -> float:
    """N^(k)(D, r); k=None gives the untruncated N."""
    h = divisor_on_curve(f, D)
    return counting_from_zeros(locate_zeros(h, r), r, k)


def proximity(f: CurveSpec, D: MultiPoly, r: float, zeros=None, h: ExpSum | None = None) -> float:
    h = h if h is not None else divisor_on_curve(f, D)
    d = D.total_degree()
    ev = Evaluator(h)
    if zeros is not None:
        r = _safe_radius(r, zeros)
    return circle_mean(lambda z: d * f.log_norm(z) - ev.log_abs(z), r)


def jensen_mean(h: ExpSum, r: float) -> float:
    """(1/2pi) int log|h(r e^{i theta})|, equal to N_h(0, r) plus a constant."""
    ev = Evaluator(h)
    return circle_mean(ev.log_abs, r)


def _match(z1: list, z2: list) -> list:
    out = []
    used = set()
    for a in z1:
        for j, b in enumerate(z2):
            if j in used:
                continue
            if abs(a.z - b.z) <= MATCH_TOL * max(1.0, abs(a.z)):
                used.add(j)
                out.append(Zero(a.z, min(a.multiplicity, b.multiplicity)))
                break
    return out


def common_zeros(h1: ExpSum, h2: ExpSum, R: float) -> list:
    if h1.is_zero() or h2.is_zero():
        raise InvalidInput("gcd counting needs two nonzero expressions")
    return _match(locate_zeros(h1, R), locate_zeros(h2, R))


def gcd_counting(h1: ExpSum, h2: ExpSum, r: float) -> float:
    return counting_from_zeros(common_zeros(h1, h2, r), r)


# --- tables -----------------------------------------------------------------------


@dataclass
class DivisorRow:
    N: list
    N1: list
    m: list
    delta: list
    delta1: list
    fmt_residual: list


@dataclass
class CountingTable:
    radii: list
    T: list
    divisors: list
    rows: list
    pairs: list = field(default_factory=list)
    N_gcd: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def monotonicity_violations(self, slack: float = 1e-7) -> list:
        bad = []

        def check(name, seq):
            for a, b, r in zip(seq, seq[1:], self.radii[1:]):
                if b < a - slack * max(1.0, abs(a)):
                    bad.append((name, r))

        check("T", self.T)
        for i, row in enumerate(self.rows):
            check(f"N[{i}]", row.N)
            check(f"N1[{i}]", row.N1)
        for (i, j), seq in zip(self.pairs, self.N_gcd):
            check(f"N_gcd[{i},{j}]", seq)
        return bad

    def csv_header(self) -> list:
        cols = ["r", "T"]
        for i in range(len(self.rows)):
            cols += [f"N_{i}", f"N1_{i}", f"m_{i}", f"delta_{i}", f"delta1_{i}"]
        cols += [f"N_gcd_{i}_{j}" for i, j in self.pairs]
        return cols

    def csv_rows(self):
        for t, r in enumerate(self.radii):
            line = [r, self.T[t]]
            for row in self.rows:
                line += [row.N[t], row.N1[t], row.m[t], row.delta[t], row.delta1[t]]
            line += [seq[t] for seq in self.N_gcd]
            yield line


def _defect(N: float, d: int, T: float) -> float:
    if T <= 0:
        return float("nan")
    return 1.0 - N / (d * T)


def exc_quantile(values, keep: float = 0.95) -> float:
    """Largest value after dropping the worst (largest) 5 percent of radii."""
    arr = np.sort(np.asarray([v for v in values if not math.isnan(v)], dtype=float))
    if arr.size == 0:
        return float("nan")
    drop = int(math.floor((1 - keep) * arr.size))
    return float(arr[arr.size - 1 - drop])


def defect_report(f: CurveSpec, divisors: list, r_grid, pairs=None, with_proximity: bool = True) -> CountingTable:
    radii = sorted(float(r) for r in r_grid)
    if not radii or radii[0] <= 0:
        raise InvalidInput("radius grid must be nonempty and positive")
    rmax = radii[-1]
    hs = []
    for i, D in enumerate(divisors):
        try:
            hs.append(divisor_on_curve(f, D, index=i))
        except CurveOnDivisor as exc:
            exc.index = i
            raise
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        zero_lists = list(pool.map(lambda h: locate_zeros(h, rmax), hs))
        T = list(pool.map(lambda r: characteristic(f, r), radii))
    rows = []
    for D, h, zs in zip(divisors, hs, zero_lists):
        d = D.total_degree()
        N = [counting_from_zeros(zs, r) for r in radii]
        N1 = [counting_from_zeros(zs, r, 1) for r in radii]
        if with_proximity:
            m = [proximity(f, D, r, zeros=zs, h=h) for r in radii]
        else:
            m = [float("nan")] * len(radii)
        rows.append(DivisorRow(
            N=N, N1=N1, m=m,
            delta=[_defect(n, d, t) for n, t in zip(N, T)],
            delta1=[_defect(n, d, t) for n, t in zip(N1, T)],
            fmt_residual=[mm + n - d * t for mm, n, t in zip(m, N, T)],
        ))
    if pairs is None:
        pairs = [(i, j) for i in range(len(divisors)) for j in range(i + 1, len(divisors))]
    gcd_rows = []
    for i, j in pairs:
        common = _match(zero_lists[i], zero_lists[j])
        gcd_rows.append([counting_from_zeros(common, r) for r in radii])
    upper = [k for k, r in enumerate(radii) if r >= rmax / 2]
    summary = {}
    for i, (D, row) in enumerate(zip(divisors, rows)):
        d = D.total_degree()
        ratio = [row.N[k] / (d * T[k]) if T[k] > 0 else float("nan") for k in upper]
        ratio1 = [row.N1[k] / (d * T[k]) if T[k] > 0 else float("nan") for k in upper]
        res = [row.fmt_residual[k] for k in upper]
        summary[i] = {
            "delta_rmax": row.delta[-1],
            "delta_exc": 1.0 - exc_quantile(ratio),
            "delta1_exc": 1.0 - exc_quantile(ratio1),
            "fmt_drift": (max(res) - min(res)) if with_proximity else float("nan"),
        }
    table = CountingTable(radii, T, list(divisors), rows, list(pairs), gcd_rows, summary)
    bad = table.monotonicity_violations()
    if bad:
        log.warning("monotonicity violated at %s", bad[:5])
    return table
