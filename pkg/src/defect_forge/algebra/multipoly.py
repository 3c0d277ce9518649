"""Exact multivariate polynomials with coefficients in Q or Q(t)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from ..errors import InvalidInput
from . import zpoly as Z
from .ratfunc import (
    ONE,
    ZERO,
    RatFunc,
    cderiv,
    cevalf,
    cevaluate,
    cnorm,
    cstr,
    pdivmod,
    plcm,
    pmul,
)


class MultiPoly:
    """Polynomial in named variables; terms map exponent tuples to coefficients.

    Coefficients are ``Fraction`` when constant and ``RatFunc`` otherwise, so
    equality and hashing do not depend on how a value was produced.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms=None, *, check: bool = True):
        self.vars = tuple(variables)
        self._hash = None
        if terms is None:
            terms = {}
        if check:
            n = len(self.vars)
            clean = {}
            for e, c in terms.items():
                e = tuple(int(a) for a in e)
                if len(e) != n:
                    raise InvalidInput(f"exponent {e} does not match {n} variables")
                if min(e, default=0) < 0:
                    raise InvalidInput(f"negative exponent {e}")
                c = cnorm(c)
                if c != 0:
                    clean[e] = c
            terms = clean
        self.terms = terms

    # --- construction ----------------------------------------------------------
    @classmethod
    def const(cls, variables, c) -> "MultiPoly":
        variables = tuple(variables)
        c = cnorm(c)
        return cls(variables, {(0,) * len(variables): c} if c != 0 else {}, check=False)

    @classmethod
    def var(cls, variables, name: str) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): ONE}, check=False)

    @classmethod
    def monomial(cls, variables, exps, c=ONE) -> "MultiPoly":
        return cls(variables, {tuple(exps): c})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self.vars, {}, check=False)

    def one(self) -> "MultiPoly":
        return MultiPoly.const(self.vars, 1)

    # --- basic queries ---------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise InvalidInput("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, v) -> int:
        i = self._index(v)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def degrees_present(self) -> list[int]:
        return sorted({sum(e) for e in self.terms})

    def has_t(self) -> bool:
        return any(isinstance(c, RatFunc) for c in self.terms.values())

    def is_polynomial_in_t(self) -> bool:
        return all(not isinstance(c, RatFunc) or c.is_polynomial() for c in self.terms.values())

    def used_vars(self) -> list[str]:
        used = set()
        for e in self.terms:
            for i, a in enumerate(e):
                if a:
                    used.add(i)
        return [self.vars[i] for i in sorted(used)]

    def support(self) -> list[tuple]:
        return sorted(self.terms)

    def _index(self, v) -> int:
        if isinstance(v, int):
            return v
        try:
            return self.vars.index(v)
        except ValueError:
            raise InvalidInput(f"unknown variable {v!r}") from None

    def leading_term(self):
        """Lex-leading (exponent, coefficient) with respect to the variable order."""
        e = max(self.terms)
        return e, self.terms[e]

    def monomial_content(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        return Z.zmonomial_content(self.terms)

    # --- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise InvalidInput(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return MultiPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = cnorm(v + c)
                if v != 0:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.vars, out, check=False)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        c = cnorm(c)
        if c == 0:
            return self.zero()
        if c == 1:
            return self
        out = {}
        for e, v in self.terms.items():
            w = cnorm(v * c)
            if w != 0:
                out[e] = w
        return MultiPoly(self.vars, out, check=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.zero()
        if not self.has_t() and not other.has_t():
            out: dict = {}
            get = out.get
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = get(e, ZERO) + c1 * c2
            return MultiPoly(self.vars, {e: c for e, c in out.items() if c}, check=False)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            c = cnorm(other)
            if c == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return self.scale(1 / c if not isinstance(c, RatFunc) else c.inverse())
        return NotImplemented

    # --- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, RatFunc)):
            c = cnorm(other)
            if c == 0:
                return not self.terms
            return self.is_constant() and self.constant_value() == c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def sort_key(self):
        """Deterministic ordering: total degree, then lexicographic support and coefficients."""
        items = sorted(self.terms.items(), reverse=True)
        return (
            self.total_degree(),
            tuple(e for e, _ in items),
            tuple(cstr(c) for _, c in items),
        )

    # --- calculus and substitution ----------------------------------------
    def diff(self, v) -> "MultiPoly":
        i = self._index(v)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = cnorm(c * k)
        return MultiPoly(self.vars, out, check=False)

    def coeff_deriv(self) -> "MultiPoly":
        """Apply d/dt to every coefficient."""
        out = {}
        for e, c in self.terms.items():
            d = cderiv(c)
            if d != 0:
                out[e] = d
        return MultiPoly(self.vars, out, check=False)

    def coeffs_in(self, v) -> dict:
        """Map k -> coefficient of v^k, each a MultiPoly over the same variables."""
        i = self._index(v)
        out: dict = {}
        for e, c in self.terms.items():
            out.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly(self.vars, t, check=False) for k, t in out.items()}

    def lc_in(self, v) -> "MultiPoly":
        cs = self.coeffs_in(v)
        return cs[max(cs)] if cs else self.zero()

    def subs(self, values: dict) -> "MultiPoly":
        """Substitute constants (int, Fraction or RatFunc) for some variables."""
        idx = {self._index(k): cnorm(v) for k, v in values.items()}
        out: dict = {}
        for e, c in self.terms.items():
            f = list(e)
            w = c
            for i, v in idx.items():
                if f[i]:
                    w = w * v ** f[i]
                    f[i] = 0
            f = tuple(f)
            out[f] = out.get(f, ZERO) + w
        return MultiPoly(self.vars, out)

    def subs_t(self, tau) -> "MultiPoly":
        """Specialize the coefficient variable t to a rational value."""
        out = {}
        for e, c in self.terms.items():
            out[e] = cevaluate(c, tau)
        return MultiPoly(self.vars, out)

    def compose(self, images: dict, new_vars) -> "MultiPoly":
        """Replace each variable by a polynomial in ``new_vars``.

        Variables missing from ``images`` must also be present in new_vars, and
        are mapped to themselves.
        """
        new_vars = tuple(new_vars)
        imgs = []
        for v in self.vars:
            if v in images:
                im = images[v]
                if not isinstance(im, MultiPoly):
                    im = MultiPoly.const(new_vars, im)
                if im.vars != new_vars:
                    im = im.with_vars(new_vars)
                imgs.append(im)
            else:
                imgs.append(MultiPoly.var(new_vars, v))
        cache: list[dict] = [dict() for _ in self.vars]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = imgs[i] ** k
            return cache[i][k]

        acc = MultiPoly(new_vars, {}, check=False)
        for e, c in self.terms.items():
            term = MultiPoly.const(new_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def with_vars(self, new_vars) -> "MultiPoly":
        """Re-express over another variable list containing every used variable."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in new_vars:
                pos.append(new_vars.index(v))
            else:
                pos.append(None)
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(new_vars)
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise InvalidInput(f"variable {self.vars[i]} not in {new_vars}")
                    f[pos[i]] = a
            out[tuple(f)] = c
        return MultiPoly(new_vars, out, check=False)

    def rename(self, mapping: dict) -> "MultiPoly":
        return MultiPoly(tuple(mapping.get(v, v) for v in self.vars), self.terms, check=False)

    def homogenize(self, v0: str) -> "MultiPoly":
        """x0^deg * p(x/x0) in variables (v0,) + self.vars."""
        d = self.total_degree()
        out = {(d - sum(e),) + e: c for e, c in self.terms.items()}
        return MultiPoly((v0,) + self.vars, out, check=False)

    def dehomogenize(self, v) -> "MultiPoly":
        """Set variable v to 1 and drop it."""
        i = self._index(v)
        out: dict = {}
        for e, c in self.terms.items():
            f = e[:i] + e[i + 1:]
            w = out.get(f)
            out[f] = c if w is None else w + c
        return MultiPoly(self.vars[:i] + self.vars[i + 1:], out)

    # --- evaluation ---------------------------------------------------------
    def evaluate(self, point, tau=None):
        """Exact evaluation at a rational point; t stays symbolic unless tau is given."""
        acc = ZERO
        for e, c in self.terms.items():
            if tau is not None:
                c = cevaluate(c, tau)
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * Fraction(x) ** k
            acc = acc + m
        return cnorm(acc)

    def evalf(self, point, tval=None):
        """Floating evaluation; entries of ``point`` may be numpy arrays."""
        acc = 0
        for e, c in self.terms.items():
            m = cevalf(c, tval) if isinstance(c, RatFunc) else float(c)
            for x, k in zip(point, e):
                if k:
                    m = m * x ** k
            acc = acc + m
        return acc

    # --- normalization --------------------------------------------------------
    def coefficient_denominator(self):
        """(integer lcm of rational denominators, lcm of t-denominators as Q[t] tuple)."""
        den_t = (ONE,)
        for c in self.terms.values():
            if isinstance(c, RatFunc) and len(c.den) > 1:
                den_t = plcm(den_t, c.den)
        return den_t

    def to_z(self, with_t: bool | None = None):
        """Clear denominators: returns (zpoly, scale) with self = zpoly / scale.

        When t occurs (or ``with_t`` is set) the zpoly has one extra trailing
        slot for t; ``scale`` is then a RatFunc (or Fraction) polynomial in t.
        """
        if with_t is None:
            with_t = self.has_t()
        if not self.terms:
            return {}, ONE
        if not with_t:
            den = 1
            for c in self.terms.values():
                den = lcm(den, c.denominator)
            zp = {e: int(c * den) for e, c in self.terms.items()}
            return zp, Fraction(den)
        den_t = self.coefficient_denominator()
        zp: dict = {}
        polys = {}
        for e, c in self.terms.items():
            if isinstance(c, RatFunc):
                q = pmul(c.num, pdivmod(den_t, c.den)[0])
            else:
                q = tuple(x * c for x in den_t)
            polys[e] = q
        ilcm = 1
        for q in polys.values():
            for x in q:
                ilcm = lcm(ilcm, x.denominator)
        for e, q in polys.items():
            for k, x in enumerate(q):
                if x:
                    zp[e + (k,)] = int(x * ilcm)
        scale = RatFunc(tuple(x * ilcm for x in den_t))
        return zp, cnorm(scale) if scale.is_constant() else scale

    @classmethod
    def from_z(cls, variables, zp: dict, with_t: bool = False, scale=ONE) -> "MultiPoly":
        """Inverse of to_z; when with_t the last slot of each exponent is t."""
        variables = tuple(variables)
        if not with_t:
            if scale == 1:
                return cls(variables, {e: Fraction(c) for e, c in zp.items()}, check=False)
            return cls(variables, {e: Fraction(c) / scale for e, c in zp.items()})
        groups: dict = {}
        for e, c in zp.items():
            groups.setdefault(e[:-1], {})[e[-1]] = c
        terms = {}
        for e, g in groups.items():
            d = max(g)
            coeffs = [ZERO] * (d + 1)
            for k, c in g.items():
                coeffs[k] = Fraction(c)
            rf = RatFunc.poly(coeffs)
            if scale != 1:
                rf = rf / scale
            terms[e] = cnorm(rf)
        return cls(variables, terms, check=False)

    def primitive(self) -> "MultiPoly":
        """Divide out the content over the coefficient field.

        The result has integer (or Z[t]) coefficients with content 1 and a
        positive lex-leading coefficient.  Over Q(t) the content includes every
        factor depending on t alone.
        """
        if not self.terms:
            return self
        with_t = self.has_t()
        zp, _ = self.to_z(with_t)
        if with_t:
            n = self.nvars
            zp = _remove_t_content(zp, n)
        zp = Z.zprimitive(zp)
        return MultiPoly.from_z(self.vars, zp, with_t)

    def monic_content(self):
        """Return (c, p) with self = c * p and p = self.primitive()."""
        p = self.primitive()
        if not self.terms:
            return ZERO, p
        e, c = p.leading_term()
        return cnorm(self.terms[e] / c if not isinstance(c, RatFunc) else self.terms[e] * c.inverse()), p

    # --- printing -------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            if isinstance(c, RatFunc):
                nz = [k for k, x in enumerate(c.num) if x != 0]
                if len(c.den) == 1 and len(nz) == 1:
                    k = nz[0]
                    x = c.num[k]
                    sign = "-" if x < 0 else "+"
                    mag = -x if x < 0 else x
                    tp = "t" if k == 1 else f"t^{k}"
                    body = tp if mag == 1 else f"{cstr(mag)}*{tp}"
                    parts.append((sign, body if not mono else f"{body}*{mono}"))
                    continue
                body = f"({c})"
                parts.append(("+", body if not mono else f"{body}*{mono}"))
                continue
            cf = Fraction(c) if not isinstance(c, RatFunc) else c.constant_value()
            sign = "-" if cf < 0 else "+"
            mag = -cf if cf < 0 else cf
            cs = cstr(mag)
            if not mono:
                parts.append((sign, cs))
            elif mag == 1:
                parts.append((sign, mono))
            else:
                parts.append((sign, f"{cs}*{mono}"))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self}; vars={','.join(self.vars)})"


def _remove_t_content(zp: dict, n: int) -> dict:
    """Divide a Z[x, t] polynomial by the gcd of its x-coefficients (polys in t)."""
    groups: dict = {}
    for e, c in zp.items():
        groups.setdefault(e[:-1], {})[(0,) * n + (e[-1],)] = c
    g = None
    for q in groups.values():
        g = q if g is None else Z.zgcd(g, q)
        if Z.zis_const(g):
            break
    if g is None or Z.zis_const(g):
        return zp
    out = Z.zdiv_exact(zp, g)
    assert out is not None
    return out


def t_poly_to_multipoly(coeffs, var="t") -> MultiPoly:
    """A Q[t] tuple as a MultiPoly in one variable named ``var``."""
    return MultiPoly((var,), {(k,): c for k, c in enumerate(coeffs) if c})


def coeff_as_tpoly(c):
    """Numerator tuple of a coefficient (Fraction or polynomial RatFunc)."""
    if isinstance(c, RatFunc):
        if not c.is_polynomial():
            raise InvalidInput("coefficient is not polynomial in t")
        return c.num
    return (Fraction(c),) if c else ()
