"""Zeros of entire exp-sums in a disk: argument principle on square cells.

The enclosing square is subdivided recursively.  The winding number of each
cell boundary is accumulated from wrapped phase increments, with every edge
refined until no increment exceeds ``MAX_STEP``; a count is accepted only
within ``GUARD`` of an integer.  Cells holding one zero are finished by
Newton's method, clusters are shrunk until their diameter drops below
``CLUSTER_DIAMETER`` and reported with the winding number as multiplicity.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidInput, ResourceLimit
from . import kernels
from .expsum import Evaluator, ExpSum

log = logging.getLogger(__name__)

GUARD = 0.25
MAX_STEP = 0.4
CLUSTER_DIAMETER = 1e-6
MAX_MULTIPLICITY = 10
DEPTH_CAP = 64
NEWTON_TOL = 1e-12
# a k-fold zero is only determined to about eps**(1/k) in double precision
CLUSTER_NEWTON_TOL = 1e-7
MAX_REFINE = 60

# irrational-looking offsets keep cell edges away from symmetric zero sets
_CENTER_SHIFT = complex(0.01234567891, 0.00987654321)
_SPLIT = 0.5 + 0.0031415926


@dataclass(frozen=True)
class Zero:
    z: complex
    multiplicity: int


class _ContourHit(Exception):
    pass


class _Edges:
    """Cached phase increments along straight edges."""

    def __init__(self, ev: Evaluator, max_step: float):
        self.ev = ev
        self.max_step = max_step
        self.cache: dict = {}
        self.evaluations = 0

    def angle(self, a: complex, b: complex) -> float:
        key = (a, b)
        if key in self.cache:
            return self.cache[key]
        if (b, a) in self.cache:
            return -self.cache[(b, a)]
        val = self._compute(a, b)
        self.cache[key] = val
        return val

    def _compute(self, a: complex, b: complex) -> float:
        # wrapped increments alone alias when the phase turns by more than pi
        # between samples, so |f'/f| times the segment length is bounded too
        n0 = 17
        length = abs(b - a)
        t = np.linspace(0.0, 1.0, n0)
        w, wd, _ = self.ev.with_derivative(a + (b - a) * t)
        self.evaluations += n0
        for _ in range(MAX_REFINE):
            if np.any(w == 0):
                raise _ContourHit()
            vel = np.abs(wd / w)
            steps = kernels.arg_steps(w)
            est = np.maximum(vel[:-1], vel[1:]) * np.diff(t) * length
            bad = np.nonzero((np.abs(steps) > self.max_step) | (est > 2 * self.max_step))[0]
            if bad.size == 0:
                return float(steps.sum())
            if np.min(t[bad + 1] - t[bad]) < 1e-14:
                raise _ContourHit()
            mids = 0.5 * (t[bad] + t[bad + 1])
            wm, wdm, _ = self.ev.with_derivative(a + (b - a) * mids)
            self.evaluations += mids.size
            t = np.insert(t, bad + 1, mids)
            w = np.insert(w, bad + 1, wm)
            wd = np.insert(wd, bad + 1, wdm)
        raise _ContourHit()


def _newton(ev: Evaluator, z0: complex, mult: int = 1, iters: int = 100, tol: float = NEWTON_TOL):
    z = complex(z0)
    for _ in range(iters):
        w, wd, _ = ev.with_derivative(np.array([z]))
        if wd[0] == 0:
            return z, False
        with np.errstate(over="ignore", invalid="ignore"):
            step = complex(mult * w[0] / wd[0])
        if not cmath.isfinite(step):
            return z, False
        z = z - step
        if abs(step) <= tol * max(1.0, abs(z)):
            return z, True
    return z, False


def _inside(z: complex, c: complex, h: float, slack: float = 1e-9) -> bool:
    tol = h * (1 + slack) + 1e-15
    return abs(z.real - c.real) <= tol and abs(z.imag - c.imag) <= tol


def _rect_count(edges: _Edges, x0, x1, y0, y1) -> float:
    p = (complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1))
    return sum(edges.angle(p[k], p[(k + 1) % 4]) for k in range(4)) / (2 * math.pi)


def _rect_meets_disk(x0, x1, y0, y1, R) -> bool:
    dx = 0.0 if x0 <= 0 <= x1 else min(abs(x0), abs(x1))
    dy = 0.0 if y0 <= 0 <= y1 else min(abs(y0), abs(y1))
    return dx * dx + dy * dy <= R * R * (1 + 1e-12)


def _nearest_int(x: float):
    k = round(x)
    return k if abs(x - k) <= GUARD else None


def locate_zeros(f: ExpSum, R: float, max_step: float = MAX_STEP) -> list:
    """All zeros of f in |z| <= R with multiplicities, sorted by modulus then argument."""
    if f.is_zero():
        raise InvalidInput("expression is identically zero")
    if not R > 0:
        raise InvalidInput("radius must be positive")
    if not f.is_entire():
        raise InvalidInput("expression must have polynomial coefficients")
    ev = Evaluator(f)
    found: list = []
    unresolved: list = []
    for attempt in range(4):
        edges = _Edges(ev, max_step / (attempt + 1))
        c0 = R * _CENTER_SHIFT * (attempt + 1)
        h0 = R * (1.02 + 0.01 * attempt) + abs(c0)
        try:
            top = _rect_count(edges, c0.real - h0, c0.real + h0, c0.imag - h0, c0.imag + h0)
        except _ContourHit:
            continue
        k = _nearest_int(top)
        if k is None:
            continue
        try:
            found, unresolved = _solve(ev, edges, (c0.real - h0, c0.real + h0, c0.imag - h0, c0.imag + h0), k, R)
        except _ContourHit:
            continue
        break
    else:
        raise ResourceLimit("zero search failed: contour repeatedly met a zero")
    if unresolved:
        raise ResourceLimit(
            f"{len(unresolved)} cells unresolved at depth cap",
            detail=[(x0, x1, y0, y1, k) for (x0, x1, y0, y1, k) in unresolved],
        )
    out = [zz for zz in found if abs(zz.z) <= R]
    out.sort(key=lambda q: (abs(q.z), math.atan2(q.z.imag, q.z.real)))
    return out


def _solve(ev, edges, rect, k, R):
    found = []
    unresolved = []
    stack = [(rect, k, 0)]
    while stack:
        (x0, x1, y0, y1), k, depth = stack.pop()
        if k == 0:
            continue
        if not _rect_meets_disk(x0, x1, y0, y1, R):
            continue
        c = complex((x0 + x1) / 2, (y0 + y1) / 2)
        half = max(x1 - x0, y1 - y0) / 2
        if k == 1:
            z, ok = _newton(ev, c)
            if ok and _inside(z, c, half):
                found.append(Zero(z, 1))
                continue
        elif 2 * half * math.sqrt(2) < CLUSTER_DIAMETER:
            if k > MAX_MULTIPLICITY:
                raise ResourceLimit(f"multiplicity {k} above {MAX_MULTIPLICITY} near {c}")
            z, ok = _newton(ev, c, k)
            if not (ok and abs(z - c) < 10 * CLUSTER_DIAMETER):
                z = c
            found.append(Zero(z, k))
            continue
        if depth >= DEPTH_CAP:
            unresolved.append((x0, x1, y0, y1, k))
            continue
        sx = x0 + (x1 - x0) * _SPLIT
        sy = y0 + (y1 - y0) * _SPLIT
        quads = [(x0, sx, y0, sy), (sx, x1, y0, sy), (sx, x1, sy, y1), (x0, sx, sy, y1)]
        try:
            ints = _split_counts(ev, edges, quads, k)
        except (ResourceLimit, _ContourHit):
            if k < 2:
                raise
            # near a multiple zero rounding swamps the phase before the cell
            # gets small; settle for the cluster when Newton agrees
            if k > MAX_MULTIPLICITY:
                raise ResourceLimit(f"multiplicity {k} above {MAX_MULTIPLICITY} near {c}")
            z, ok = _newton(ev, c, k, tol=CLUSTER_NEWTON_TOL)
            if not (ok and _inside(z, c, half)):
                raise
            log.debug("cluster of %d at %s accepted at cell size %.3g", k, z, 2 * half)
            found.append(Zero(z, k))
            continue
        for q, kk in zip(quads, ints):
            stack.append((q, kk, depth + 1))
    return found, unresolved


def _split_counts(ev, edges, quads, k):
    counts = [_rect_count(edges, *q) for q in quads]
    ints = [_nearest_int(x) for x in counts]
    if any(v is None for v in ints) or sum(ints) != k:
        # tighten the phase step once for this cell before giving up
        strict = _Edges(ev, edges.max_step / 4)
        counts = [_rect_count(strict, *q) for q in quads]
        ints = [_nearest_int(x) for x in counts]
        if any(v is None for v in ints) or sum(ints) != k:
            raise ResourceLimit(f"winding numbers of sub-cells {counts} do not add up to {k}")
    return ints


def total_winding(f: ExpSum, R: float, max_step: float = MAX_STEP) -> float:
    """Winding number of f along the circle |z| = R (polygonal, adaptively refined)."""
    ev = Evaluator(f)
    n = 64
    th = np.linspace(0, 2 * np.pi, n + 1)
    pts = R * np.exp(1j * th)
    edges = _Edges(ev, max_step)
    return sum(edges.angle(complex(pts[i]), complex(pts[i + 1])) for i in range(n)) / (2 * math.pi)
