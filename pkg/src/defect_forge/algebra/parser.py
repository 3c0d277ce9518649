"""Recursive-descent parser for the polynomial and curve expression grammar.

Polynomial expressions use the variables x0..x9, y0..y9, L, T (plus the
derived names L1, X1_2, ... that the library itself prints) with
coefficients in Q(t).  Division is only allowed by expressions free of
polynomial variables.  Curve components additionally know ``z`` and
``exp(...)``; a component parses to a sum of terms exp(p(z)) * r(z).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError
from .multipoly import MultiPoly
from .ratfunc import ONE, RatFunc, cnorm

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)

VAR_RE = re.compile(r"^(x\d|y\d|L\d*|T|X\d+(?:_\d+)?)$")


@dataclass
class Token:
    kind: str
    text: str
    col: int


def tokenize(src: str, line: int = 1) -> list[Token]:
    pos = 0
    out = []
    src = src.rstrip("\n")
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", line, pos + 1, src[pos])
        kind = m.lastgroup
        text = m.group(kind)
        col = m.start(kind) + 1
        out.append(Token(kind, text, col))
        pos = m.end()
    out.append(Token("end", "", len(src) + 1))
    return out


# --- polynomial values during parsing: {monomial: coeff} ---------------------------
# a monomial is a sorted tuple of (name, exponent)


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            d = dict(m1)
            for v, k in m2:
                d[v] = d.get(v, 0) + k
            m = tuple(sorted(d.items()))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: cnorm(c) for m, c in out.items() if c != 0}


def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v != 0:
            out[m] = cnorm(v)
        else:
            out.pop(m, None)
    return out


class _PolyParser:
    def __init__(self, src: str, line: int, allow_vars=None):
        self.toks = tokenize(src, line)
        self.i = 0
        self.line = line
        self.allow = allow_vars

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col, tok.text)

    def expect(self, text):
        t = self.peek()
        if t.text != text:
            self.error(f"expected {text!r}")
        return self.take()

    def parse(self) -> dict:
        if self.peek().kind == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek().kind != "end":
            self.error("unexpected token")
        return v

    def expr(self) -> dict:
        v = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            w = self.term()
            v = _padd(v, w, 1 if op == "+" else -1)
        return v

    def term(self) -> dict:
        v = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            w = self.unary()
            if op.text == "*":
                v = _pmul(v, w)
            else:
                if any(m for m in w):
                    self.error("division by a polynomial in the variables", op)
                c = w.get((), 0)
                if c == 0:
                    self.error("division by zero", op)
                inv = (1 / c) if not isinstance(c, RatFunc) else c.inverse()
                v = {m: cnorm(x * inv) for m, x in v.items()}
        return v

    def unary(self) -> dict:
        if self.peek().text == "-":
            self.take()
            return {m: -c for m, c in self.unary().items()}
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek().text == "^":
            op = self.take()
            t = self.peek()
            if t.kind != "num":
                self.error("exponent must be a positive integer literal")
            self.take()
            k = int(t.text)
            if k < 1:
                self.error("exponent must be positive", t)
            out = {(): ONE}
            for _ in range(k):
                out = _pmul(out, base)
            del op
            return out
        return base

    def atom(self) -> dict:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return {(): Fraction(int(t.text))}
        if t.kind == "id":
            self.take()
            if t.text == "t":
                return {(): RatFunc.t()}
            if VAR_RE.match(t.text) and (self.allow is None or t.text in self.allow):
                return {((t.text, 1),): ONE}
            self.error(f"unknown variable {t.text!r}", t)
        if t.text == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        self.error("unexpected token")


def _var_sort_key(name: str):
    order = {"x": 0, "y": 1, "L": 2, "X": 3, "T": 4}
    digits = re.findall(r"\d+", name)
    return (order.get(name[0], 9), [int(d) for d in digits], name)


def sort_variables(names) -> tuple:
    return tuple(sorted(set(names), key=_var_sort_key))


def parse_poly(src: str, variables=None, line: int = 1) -> MultiPoly:
    """Parse one polynomial; ``variables`` fixes the variable order (and the allowed set)."""
    allow = set(variables) if variables is not None else None
    raw = _PolyParser(src, line, allow).parse()
    if variables is None:
        names = sort_variables(v for m in raw for v, _ in m)
    else:
        names = tuple(variables)
    terms = {}
    for m, c in raw.items():
        e = [0] * len(names)
        for v, k in m:
            e[names.index(v)] = k
        terms[tuple(e)] = c
    return MultiPoly(names, terms)


def parse_ratfunc(src: str, line: int = 1):
    """Parse an element of Q(t) (no polynomial variables)."""
    raw = _PolyParser(src, line, allow_vars=set()).parse()
    return cnorm(raw.get((), 0))


def split_lines(text: str):
    """Yield (line_number, content) for non-blank, non-comment lines."""
    for k, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield k, s


def infer_variables(polys_raw) -> tuple:
    names = set()
    for raw in polys_raw:
        for m in raw:
            for v, _ in m:
                names.add(v)
    return sort_variables(names)


def parse_forms(text: str, require_homogeneous: bool = False, nvars: int | None = None,
                prefix: str = "x") -> list[MultiPoly]:
    """Parse a forms file: one polynomial per line over x0..x{n-1} (n inferred if omitted)."""
    raws = []
    for ln, s in split_lines(text):
        raws.append((ln, s, _PolyParser(s, ln).parse()))
    if not raws:
        raise ParseError("no forms in input", 1, 1)
    used = infer_variables(r for _, _, r in raws)
    if nvars is None:
        top = -1
        for v in used:
            if not re.match(rf"^{prefix}\d$", v):
                raise ParseError(f"unexpected variable {v!r} in forms file", raws[0][0], 1, v)
            top = max(top, int(v[1:]))
        nvars = max(top + 1, 1)
    names = tuple(f"{prefix}{i}" for i in range(nvars))
    out = []
    for ln, s, raw in raws:
        p = parse_poly(s, names, ln)
        if require_homogeneous and not p.is_homogeneous():
            degs = ",".join(str(d) for d in p.degrees_present())
            raise ParseError(f"mixed degrees {degs}", ln, 1, s)
        out.append(p)
    return out


# --- curve components --------------------------------------------------------------

# A curve value is a dict {exponent: coefficient} where exponent is a Q[z]
# coefficient tuple (ascending, trimmed) and coefficient is an element of Q(z)
# stored as a RatFunc whose variable plays the role of z.


def _c_mul(a: dict, b: dict) -> dict:
    from .ratfunc import padd

    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = padd(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return {e: cnorm(c) for e, c in out.items() if c != 0}


def _c_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v != 0:
            out[e] = cnorm(v)
        else:
            out.pop(e, None)
    return out


class _CurveParser(_PolyParser):
    def __init__(self, src: str, line: int):
        super().__init__(src, line, allow_vars=set())

    def expr(self):
        v = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            v = _c_add(v, self.term(), 1 if op == "+" else -1)
        return v

    def term(self):
        v = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            w = self.unary()
            if op.text == "*":
                v = _c_mul(v, w)
            else:
                if len(w) != 1:
                    self.error("can only divide by a single exp(p)*r term", op)
                ((e, c),) = w.items()
                if c == 0:
                    self.error("division by zero", op)
                inv = c.inverse() if isinstance(c, RatFunc) else 1 / c
                v = _c_mul(v, {tuple(-x for x in e): cnorm(inv)})
        return v

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return {e: -c for e, c in self.unary().items()}
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind != "num" or int(t.text) < 1:
                self.error("exponent must be a positive integer literal")
            self.take()
            out = {(): ONE}
            for _ in range(int(t.text)):
                out = _c_mul(out, base)
            return out
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            return {(): Fraction(int(t.text))}
        if t.kind == "id":
            self.take()
            if t.text in ("z", "t"):
                return {(): RatFunc.t()}
            if t.text == "exp":
                self.expect("(")
                inner = self.expr()
                close = self.expect(")")
                if set(inner) != {()}:
                    self.error("exp argument must be a polynomial in z", close)
                c = inner[()]
                if isinstance(c, RatFunc):
                    if not c.is_polynomial():
                        self.error("exp argument must be a polynomial in z", close)
                    e = c.num
                else:
                    e = (Fraction(c),) if c else ()
                return {e: ONE}
            self.error(f"unknown name {t.text!r} in curve expression", t)
        if t.text == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        self.error("unexpected token")


def parse_curve_expr(src: str, line: int = 1) -> dict:
    return _CurveParser(src, line).parse()
