"""Sparse linear algebra used by the Macaulay-matrix computations.

Rows are dicts {column: value}.  Three elimination backends share one shape:
modular (fast screening), fraction-free over the integers (exact, with row
contents divided out), and a generic field version for Q(t) entries.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .algebra.ratfunc import RatFunc, cnorm

LARGE_PRIME = (1 << 61) - 1


class Echelon:
    """Incremental row echelon form; remembers rows that reduced to pure right-hand sides."""

    def __init__(self, ncols: int, mode: str = "int", p: int = LARGE_PRIME):
        self.ncols = ncols
        self.mode = mode
        self.p = p
        self.pivots: dict = {}  # col -> row
        self.residual_rhs: list = []  # rows with no coefficient entries left

    # --- per-backend primitives -------------------------------------------------
    def _combine(self, row: dict, prow: dict, col: int) -> dict:
        a = row[col]
        b = prow[col]
        if self.mode == "mod":
            p = self.p
            # prow is normalized with leading 1
            out = dict(row)
            for k, v in prow.items():
                w = (out.get(k, 0) - a * v) % p
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
            return out
        if self.mode == "int":
            g = gcd(a, b)
            fa, fb = b // g, a // g
            out = {k: v * fa for k, v in row.items()} if fa != 1 else dict(row)
            for k, v in prow.items():
                w = out.get(k, 0) - fb * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
            c = 0
            for v in out.values():
                c = gcd(c, v)
                if c == 1:
                    break
            if c > 1:
                out = {k: v // c for k, v in out.items()}
            return out
        # field mode, prow normalized with leading 1
        out = dict(row)
        for k, v in prow.items():
            w = cnorm(out.get(k, 0) - a * v)
            if w != 0:
                out[k] = w
            else:
                out.pop(k, None)
        return out

    def _normalize(self, row: dict, col: int) -> dict:
        if self.mode == "mod":
            inv = pow(row[col], -1, self.p)
            return {k: v * inv % self.p for k, v in row.items()}
        if self.mode == "field":
            a = row[col]
            inv = a.inverse() if isinstance(a, RatFunc) else 1 / a
            return {k: cnorm(v * inv) for k, v in row.items()}
        return row

    # --- public ------------------------------------------------------------------
    def add_row(self, row: dict) -> bool:
        """Reduce and insert a row; True when it produced a new pivot."""
        nc = self.ncols
        if self.mode == "mod":
            row = {k: v % self.p for k, v in row.items() if v % self.p}
        while True:
            coef_cols = [k for k in row if k < nc]
            if not coef_cols:
                if row:
                    self.residual_rhs.append(row)
                return False
            col = min(coef_cols)
            if col not in self.pivots:
                self.pivots[col] = self._normalize(row, col)
                return True
            hit = col
            row = self._combine(row, self.pivots[hit], hit)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def inconsistent_rhs(self) -> set:
        """Right-hand-side column indices (offset by ncols) that cannot be matched."""
        bad = set()
        for row in self.residual_rhs:
            bad.update(k - self.ncols for k in row)
        return bad

    def solve(self, j: int):
        """Solution vector (dict col -> value) for rhs column j with free variables 0."""
        target = self.ncols + j
        sol: dict = {}
        for col in sorted(self.pivots, reverse=True):
            row = self.pivots[col]
            acc = row.get(target, 0)
            if self.mode == "int":
                acc = Fraction(acc)
            for k, v in row.items():
                if k != col and k < self.ncols and k in sol:
                    acc = acc - v * sol[k]
            if self.mode == "mod":
                val = acc * pow(row[col], -1, self.p) % self.p
            elif self.mode == "int":
                val = acc / row[col]
            else:
                val = cnorm(acc)  # leading entry is 1
            if val != 0:
                sol[col] = val
        return sol


def rank(rows, ncols: int, mode: str = "int", p: int = LARGE_PRIME) -> int:
    ech = Echelon(ncols, mode, p)
    for r in rows:
        ech.add_row(r)
        if ech.rank == ncols:
            break
    return ech.rank


def to_int_row(row: dict) -> dict:
    """Scale a row of Fractions to coprime integers."""
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    return {k: int(v * den) for k, v in row.items()}
