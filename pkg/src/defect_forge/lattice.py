"""Integer lattice utilities: unimodular matrices, basis completion, Bezout pairs."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterator, Sequence

from .errors import InvalidInput


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _inverse(rows) -> tuple:
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = []
    for r in aug:
        row = []
        for x in r[n:]:
            if x.denominator != 1:
                raise InvalidInput("inverse is not integral")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


class UnimodularMatrix:
    """Square integer matrix with determinant +1 or -1; the inverse is cached."""

    __slots__ = ("rows", "det", "_inv")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidInput("unimodular matrix must be square and nonempty")
        d = int_det(rows)
        if d not in (1, -1):
            raise InvalidInput(f"matrix has determinant {d}, not +-1")
        self.rows = rows
        self.det = d
        self._inv = None

    @property
    def n(self) -> int:
        return len(self.rows)

    def inverse(self) -> "UnimodularMatrix":
        if self._inv is None:
            self._inv = UnimodularMatrix(_inverse(self.rows))
        return self._inv

    def norm_inf(self) -> int:
        """Maximum absolute row sum."""
        return max(sum(abs(x) for x in r) for r in self.rows)

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        cols = list(zip(*other.rows))
        return UnimodularMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows]
        )

    def direct_sum_one(self) -> "UnimodularMatrix":
        """The block matrix (1) + self."""
        n = self.n
        rows = [(1,) + (0,) * n] + [(0,) + r for r in self.rows]
        return UnimodularMatrix(rows)

    def pad_identity(self, k: int) -> "UnimodularMatrix":
        """Identity of size k followed by self on the diagonal."""
        n = self.n
        rows = [tuple(int(i == j) for j in range(k + n)) for i in range(k)]
        rows += [(0,) * k + r for r in self.rows]
        return UnimodularMatrix(rows)

    def apply_row(self, e: Sequence[int]) -> tuple:
        """Row vector times matrix: e * self."""
        return tuple(sum(e[i] * self.rows[i][j] for i in range(self.n)) for j in range(self.n))

    def __eq__(self, other):
        return isinstance(other, UnimodularMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"UnimodularMatrix({[list(r) for r in self.rows]})"

    @classmethod
    def identity(cls, n: int) -> "UnimodularMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])


def bezout_pair(n1: int, n2: int) -> tuple[int, int]:
    """Integers (a, b) with n1*a + n2*b = 1 and a in the symmetric range mod |n2|."""
    if n1 == 0 and n2 == 0:
        raise InvalidInput("bezout_pair of (0, 0)")
    if gcd(n1, n2) != 1:
        raise InvalidInput(f"gcd({n1}, {n2}) = {gcd(n1, n2)} is not 1")
    if n2 == 0:
        return n1, 0
    if n1 == 0:
        return 0, n2
    # extended Euclid on absolute values
    r0, r1 = abs(n1), abs(n2)
    s0, s1 = 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    a = s0 if n1 > 0 else -s0
    m = abs(n2)
    a %= m
    if 2 * a > m:
        a -= m
    b = (1 - n1 * a) // n2
    assert n1 * a + n2 * b == 1
    return a, b


def _normalize_row(r):
    for x in r:
        if x:
            return tuple(r) if x > 0 else tuple(-y for y in r)
    return tuple(r)


def _extend_rows(m: tuple) -> list:
    n = len(m)
    if n == 1:
        return [m]
    g = reduce(gcd, m[:-1], 0)
    mn = m[-1]
    if g == 0:
        # m = (0, ..., 0, +-1)
        return [m] + [tuple(int(i == j) for j in range(n)) for i in range(n - 1)]
    mp = tuple(x // g for x in m[:-1])
    sub = _extend_rows(mp)
    beta, nalpha = bezout_pair(g, mn)
    alpha = -nalpha
    rows = [m]
    rows += [w + (0,) for w in sub[1:]]
    rows.append(tuple(alpha * x for x in mp) + (beta,))
    return rows


def extend_to_basis(m: Sequence[int]) -> UnimodularMatrix:
    """Unimodular matrix with first row m and every other entry |v_ij| <= max(|m_j|, 1).

    Built recursively: with g the gcd of the first n-1 entries, complete m/g
    in one dimension less, then close the basis with a Bezout row for (g, m_n).
    """
    m = tuple(int(x) for x in m)
    if len(m) < 2:
        raise InvalidInput("extend_to_basis needs dimension at least 2")
    if not any(m):
        raise InvalidInput("cannot extend the zero vector")
    if reduce(gcd, m, 0) != 1:
        raise InvalidInput(f"vector {m} is not primitive; divide out the gcd first")
    rows = _extend_rows(m)
    rows = [rows[0]] + [_normalize_row(r) for r in rows[1:]]
    return UnimodularMatrix(rows)


def satisfies_bound(A: UnimodularMatrix, m: Sequence[int]) -> bool:
    return all(
        abs(r[j]) <= max(abs(m[j]), 1) for r in A.rows[1:] for j in range(len(m))
    )


def _vectors_with_norm_at_most(n: int, k: int) -> list:
    """Integer vectors of length n with l1-norm <= k, lexicographically sorted."""
    out = []

    def rec(prefix, left, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for x in range(-left, left + 1):
            prefix.append(x)
            rec(prefix, left - abs(x), remaining - 1)
            prefix.pop()

    rec([], k, n)
    return out


def _minors_gcd(rows) -> int:
    k = len(rows)
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, int_det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return 1
    return g


def enumerate_unimodular(n: int, bound: int) -> Iterator[UnimodularMatrix]:
    """All n x n unimodular matrices with norm_inf <= bound.

    Order: by norm_inf, then row-major lexicographic.  Lazy; partial row sets
    that cannot be completed to a unimodular matrix are pruned.
    """
    if n < 1:
        raise InvalidInput("dimension must be positive")
    for k in range(1, bound + 1):
        vecs = _vectors_with_norm_at_most(n, k)
        norms = [sum(abs(x) for x in v) for v in vecs]

        def rec(chosen, has_k):
            depth = len(chosen)
            if depth == n:
                if has_k and abs(int_det(chosen)) == 1:
                    yield UnimodularMatrix(chosen)
                return
            last = depth == n - 1
            for v, nv in zip(vecs, norms):
                if not any(v):
                    continue
                hk = has_k or nv == k
                if last and not hk:
                    continue
                cand = chosen + [v]
                if not last and _minors_gcd(cand) != 1:
                    continue
                yield from rec(cand, hk)

        yield from rec([], False)
