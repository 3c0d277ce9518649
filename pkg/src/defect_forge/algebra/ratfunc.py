"""The differential field Q(t).

Univariate polynomials over Q are plain tuples of ``Fraction`` listed from the
constant term upwards with no trailing zeros (the zero polynomial is ``()``).
``RatFunc`` is a reduced quotient of two such tuples with a monic denominator;
its derivation is d/dt.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import InvalidInput

ZERO = Fraction(0)
ONE = Fraction(1)


def ptrim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def pdeg(a) -> int:
    return len(a) - 1


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pneg(a):
    return tuple(-x for x in a)


def psub(a, b):
    return padd(a, pneg(b))


def pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return (), tuple(r)
    q = [ZERO] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    while r and r[-1] == 0:
        r.pop()
    while q and q[-1] == 0:
        q.pop()
    return tuple(q), tuple(r)


def pmonic(a):
    if not a:
        return a
    lc = a[-1]
    if lc == 1:
        return a
    return tuple(x / lc for x in a)


def pgcd(a, b):
    """Monic gcd over Q (gcd(0, 0) = 0)."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pderiv(a):
    return tuple(i * a[i] for i in range(1, len(a)))


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def ppow(a, k):
    out = (ONE,)
    base = a
    while k:
        if k & 1:
            out = pmul(out, base)
        k >>= 1
        if k:
            base = pmul(base, base)
    return out


def plcm(a, b):
    g = pgcd(a, b)
    return pmonic(pmul(pdivmod(a, g)[0], b))


def pstr(a, var="t") -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = _fstr(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{_fstr(mag)}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _fstr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def pinteger_content(a):
    """Return (scale, b) with a = scale * b, b integer-coefficient and primitive, lc(b) > 0."""
    if not a:
        return ZERO, ()
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), tuple(v // g for v in ints)


class RatFunc:
    """Reduced element num/den of Q(t) with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(ONE,), *, reduced: bool = False):
        if not reduced:
            num = ptrim(num)
            den = ptrim(den)
            if not den:
                raise ZeroDivisionError("zero denominator in rational function")
            if not num:
                den = (ONE,)
            else:
                g = pgcd(num, den)
                if len(g) > 1:
                    num = pdivmod(num, g)[0]
                    den = pdivmod(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    num = tuple(x / lc for x in num)
                    den = tuple(x / lc for x in den)
        self.num = num
        self.den = den

    @classmethod
    def t(cls) -> "RatFunc":
        return cls((ZERO, ONE), reduced=True)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c,) if c else (), reduced=True)

    @classmethod
    def poly(cls, coeffs) -> "RatFunc":
        return cls(ptrim(coeffs), reduced=True)

    # --- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise InvalidInput("rational function is not constant")
        return self.num[0] if self.num else ZERO

    def degree(self) -> int:
        """Degree of the numerator minus degree of the denominator."""
        if not self.num:
            raise InvalidInput("degree of zero rational function")
        return len(self.num) - len(self.den)

    # --- arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(padd(self.num, other.num), self.den)
        if len(other.den) == 1:
            return RatFunc(padd(self.num, pmul(other.num, self.den)), self.den, reduced=True)
        if len(self.den) == 1:
            return RatFunc(padd(pmul(self.num, other.den), other.num), other.den, reduced=True)
        return RatFunc(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, reduced=True)

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

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc((), reduced=True)
            return RatFunc(pscale(self.num, Fraction(other)), self.den, reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.den) == 1 and len(other.den) == 1:
            return RatFunc(pmul(self.num, other.num), reduced=True)
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(ppow(self.num, k), ppow(self.den, k), reduced=True)

    def deriv(self) -> "RatFunc":
        # (n/d)' = (n'd - nd') / d^2
        n, d = self.num, self.den
        if len(d) == 1:
            return RatFunc(pderiv(n), reduced=True)
        return RatFunc(psub(pmul(pderiv(n), d), pmul(n, pderiv(d))), pmul(d, d))

    # --- evaluation ----------------------------------------------------------
    def __call__(self, x):
        d = peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {x}")
        return peval(self.num, x) / d

    def evalf(self, z):
        """Floating evaluation; accepts numpy arrays."""
        num = 0
        for c in reversed(self.num):
            num = num * z + float(c)
        den = 0
        for c in reversed(self.den):
            den = den * z + float(c)
        return num / den

    # --- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if len(self.den) == 1:
            return pstr(self.num)
        return f"({pstr(self.num)})/({pstr(self.den)})"


def cnorm(c):
    """Canonical coefficient: Fraction when constant, RatFunc otherwise."""
    if isinstance(c, RatFunc):
        return c.constant_value() if c.is_constant() else c
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise InvalidInput(f"unsupported coefficient type {type(c).__name__}")


def cderiv(c):
    return cnorm(c.deriv()) if isinstance(c, RatFunc) else ZERO


def cstr(c) -> str:
    if isinstance(c, RatFunc):
        return str(c)
    return _fstr(Fraction(c))


def cevaluate(c, tau):
    """Specialize t = tau (exact)."""
    if isinstance(c, RatFunc):
        return Fraction(c(Fraction(tau)))
    return c


def cevalf(c, z):
    if isinstance(c, RatFunc):
        return c.evalf(z)
    return float(c)
