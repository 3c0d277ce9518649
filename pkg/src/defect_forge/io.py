"""Text formats: certificates, key:value configs and report rendering.

A certificate file is line oriented::

    vars: x0, x1, x2
    s: 3
    R: 1
    P[0][0]: x0 - x1
    ...

Blank lines and ``#`` comments are ignored; every polynomial uses the
expression grammar, so the file can be audited and edited by hand.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra.multipoly import MultiPoly
from .algebra.parser import parse_poly, parse_ratfunc, split_lines
from .errors import ParseError
from .nullstellensatz import Certificate

_P_KEY = re.compile(r"^P\[(\d+)\]\[(\d+)\]$")


def format_certificate(cert: Certificate) -> str:
    lines = [f"vars: {', '.join(cert.variables)}", f"s: {cert.s}", f"R: {cert.R}"]
    for j, row in enumerate(cert.P):
        for i, p in enumerate(row):
            lines.append(f"P[{j}][{i}]: {p}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    variables = None
    s = None
    R = None
    entries = {}
    for ln, line in split_lines(text):
        if ":" not in line:
            raise ParseError("expected 'key: value'", ln, 1, line)
        key, val = (x.strip() for x in line.split(":", 1))
        if key == "vars":
            variables = tuple(v.strip() for v in val.split(",") if v.strip())
        elif key == "s":
            try:
                s = int(val)
            except ValueError:
                raise ParseError("s must be an integer", ln, len(key) + 2, val) from None
        elif key == "R":
            R = parse_ratfunc(val, ln)
        else:
            m = _P_KEY.match(key)
            if not m:
                raise ParseError(f"unknown key {key!r}", ln, 1, key)
            if variables is None:
                raise ParseError("'vars' must precede the P entries", ln, 1, key)
            entries[(int(m.group(1)), int(m.group(2)))] = parse_poly(val, variables, ln)
    if variables is None or s is None or R is None:
        raise ParseError("certificate needs vars, s and R", 1, 1)
    n = len(variables)
    P = [[entries.get((j, i), MultiPoly.const(variables, 0)) for i in range(n)] for j in range(n)]
    extra = [k for k in entries if k[0] >= n or k[1] >= n]
    if extra:
        raise ParseError(f"P index {extra[0]} out of range for {n} variables", 1, 1)
    return Certificate(variables, s, R, P)


def parse_config(text: str) -> dict:
    """key: value pairs, one per line."""
    out = {}
    for ln, line in split_lines(text):
        if ":" not in line:
            raise ParseError("expected 'key: value'", ln, 1, line)
        key, val = (x.strip() for x in line.split(":", 1))
        out[key] = val
    return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, MultiPoly):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and x != x:
        return None
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


def format_pipeline(report) -> str:
    lines = [
        f"G: {report.G}",
        f"Gtilde: {report.Gtilde}",
        f"A: {report.A}",
        f"H: {report.H}",
        f"B0: {report.B0}",
        f"B: {report.B}",
        f"exponents: {', '.join(str(a) for a in report.pi.exponents)}",
        f"epsilon: {report.epsilon}",
        f"transversality: {report.transversality}",
    ]
    for k, run in enumerate(report.runs):
        lines.append(f"# factor {k}: {run.Gtilde}")
        for tag, p in run.description.polynomials:
            lines.append(f"Z[{tag}]: {p}")
    return "\n".join(lines) + "\n"


def pipeline_summary(report) -> dict:
    return {
        "degree_bound": report.degree_bound,
        "degree_B": report.B.total_degree(),
        "divisibility_check": report.divisibility_check,
        "budget_exhausted": report.budget_exhausted,
        "factors": len(report.runs),
        "epsilon": report.epsilon,
    }


def format_description(desc) -> str:
    lines = [f"kind: {desc.kind}", f"budget_exhausted: {str(desc.budget_exhausted).lower()}"]
    for k, v in sorted(desc.meta.items()):
        if k in ("matrices", "bounds"):
            continue
        lines.append(f"{k}: {v}")
    for tag, p in desc.polynomials:
        lines.append(f"[{tag}] {p}")
    r = desc.n2
    if r is not None:
        lines.append(f"B: {r.B}")
        lines.append("gamma: " + ", ".join(str(v) for v in r.gamma))
        lines.append("alpha: " + ", ".join(str(v) for v in r.alpha))
        lines.append("degree_drop: " + ", ".join(str(v) for v in r.degree_drop))
        lines.append("R: " + ", ".join(str(v) for v in r.R))
        for tag, f in r.implicit:
            lines.append(f"implicit[{tag}]: {f}")
    return "\n".join(lines) + "\n"


def _fmt_float(x: float) -> str:
    if x != x:
        return "nan"
    return repr(float(x))


def format_table_csv(table) -> str:
    out = [",".join(table.csv_header())]
    for row in table.csv_rows():
        out.append(",".join(_fmt_float(v) for v in row))
    return "\n".join(out) + "\n"
