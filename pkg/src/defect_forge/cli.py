"""Command-line entry point: ``defect-forge <subcommand> ...``.

Exit codes: 0 success, 1 certificate rejected, 2 invalid input or violated
precondition (including forms not in general position), 3 resource limit,
4 pipeline failure, 5 inconclusive, 6 curve contained in a divisor,
64 usage error, 65 parse error, 66 missing input file.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path

from .algebra.factor import factorize
from .algebra.parser import parse_forms, parse_poly, parse_ratfunc
from .degeneracy import degeneracy_locus, jacobian_det
from .derivation import Coprime, UModel, du_apply, du_coprime
from .errors import DefectForgeError
from .exceptional import DEFAULT_BUDGET, build_Z_n2, build_Z_projective, gcd_params
from .io import (
    format_certificate,
    format_description,
    format_pipeline,
    format_table_csv,
    parse_certificate,
    pipeline_summary,
    to_json,
)
from .lattice import extend_to_basis
from .nullstellensatz import check_weak_general_position, find_certificate, verify_certificate
from .specialization import compute_sigma

EXIT_USAGE = 64
EXIT_NOINPUT = 66

log = logging.getLogger("defect_forge")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _MissingInput(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise _MissingInput(f"cannot read input file {path}")
    return p.read_text(encoding="utf-8")


def _expr(text: str) -> str:
    """Inline expression, or the contents of a file when written as @path."""
    return _read(text[1:]).strip() if text.startswith("@") else text


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _forms(args, require_homogeneous: bool = False):
    return parse_forms(_read(args.forms), require_homogeneous=require_homogeneous,
                       nvars=getattr(args, "nvars", None))


# --- subcommands ------------------------------------------------------------------


def cmd_check_position(args) -> int:
    Q = _forms(args)
    w = check_weak_general_position(Q, budget=args.budget)
    _emit(args, f"in weakly general position: yes\nwitness: {w.z0}\n")
    return 0


def cmd_nullstellensatz(args) -> int:
    Q = _forms(args, require_homogeneous=True)
    cert = find_certificate(Q, s_cap=args.s_cap)
    _emit(args, format_certificate(cert))
    return 0


def cmd_verify(args) -> int:
    Q = _forms(args, require_homogeneous=True)
    cert = parse_certificate(_read(args.certificate))
    res = verify_certificate(Q, cert)
    if res.ok:
        _emit(args, "certificate: valid\n")
        return 0
    _emit(args, f"certificate: invalid ({res.reason})\n")
    return 1


def cmd_jacobian(args) -> int:
    F = _forms(args)
    G = jacobian_det(F)
    lines = [f"G: {G}"]
    if args.factor and not G.is_zero():
        fz = factorize(G)
        lines.append(f"unit: {fz.unit}")
        for f, k in fz.factors:
            lines.append(f"factor: {f}" + (f" ^{k}" if k > 1 else ""))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_degeneracy(args) -> int:
    F = _forms(args)
    rep = degeneracy_locus(F, epsilon=args.epsilon, budget=args.budget, kappa=args.kappa,
                           all_factors=args.all_factors, assert_transversal=args.assert_transversal)
    summary = pipeline_summary(rep)
    text = format_pipeline(rep) + "summary: " + json.dumps(json.loads(to_json(summary)), sort_keys=True) + "\n"
    _emit(args, text)
    if args.json:
        Path(args.json).write_text(to_json(summary) + "\n", encoding="utf-8")
    return 0


def cmd_du(args) -> int:
    F = parse_poly(_expr(args.poly))
    ells = [parse_ratfunc(_expr(e)) for e in args.ell]
    u = UModel(F.nvars, ells)
    lines = [f"vars: {', '.join(F.vars)}", f"DuF: {du_apply(F, u)}"]
    if args.coprime:
        r = du_coprime(F, u)
        if isinstance(r, Coprime):
            lines.append("coprime: yes")
        else:
            lines.append("coprime: no")
            lines.append("relation: " + ", ".join(str(x) for x in r.exponents))
            lines.append(f"common_factor: {r.common_factor}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_sigma(args) -> int:
    f = parse_poly(_expr(args.poly))
    params = [p.strip() for p in args.params.split(",")] if args.params else None
    sig = compute_sigma(f, params)
    lines = [f"params: {', '.join(sig.params)}"]
    lines += [f"generator: {g}" for g in sig.generators]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_lattice(args) -> int:
    A = extend_to_basis(args.vector)
    _emit(args, "\n".join(" ".join(str(x) for x in row) for row in A.rows) + "\n")
    return 0


def cmd_exceptional(args) -> int:
    F = parse_poly(_expr(args.poly))
    if args.relation:
        rel = tuple(int(x) for x in args.relation.split(","))
        desc = build_Z_n2(F, rel, check_position=not args.no_position_check)
    else:
        desc = build_Z_projective(F, args.epsilon, args.budget, args.kappa)
    _emit(args, format_description(desc))
    return 0


def cmd_gcd_params(args) -> int:
    gp = gcd_params(args.n, args.d, args.epsilon, args.kappa, args.L)
    lines = [f"m: {gp.m}", f"c: {gp.c}", f"M: {gp.M}", f"M_prime: {gp.M_prime}", f"C1: {gp.C1}",
             f"kappa: {gp.kappa}", "residuals: " + ", ".join(str(r) for r in gp.residuals)]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_nevanlinna(args) -> int:
    from .numerics.expsum import parse_curve
    from .numerics.nevanlinna import defect_report

    curve = parse_curve(_read(args.curve))
    divisors = parse_forms(_read(args.divisors), require_homogeneous=True, nvars=curve.n + 1)
    if args.rmax <= 0 or args.grid < 1:
        raise _UsageError("--rmax must be positive and --grid at least 1")
    radii = [args.rmax * (k + 1) / args.grid for k in range(args.grid)]
    table = defect_report(curve, divisors, radii, with_proximity=not args.no_proximity)
    _emit(args, format_table_csv(table))
    if args.json:
        Path(args.json).write_text(to_json(table.summary) + "\n", encoding="utf-8")
    return 0


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="defect-forge", description="Degeneracy loci, exceptional sets, "
                "Nullstellensatz certificates and Nevanlinna numerics.")
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized choice (default 0)")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    p.add_argument("--config", help="file of 'key: value' lines giving option defaults")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    p.subcommands = {}

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        p.subcommands[name] = sp
        sp.set_defaults(func=fn)
        sp.add_argument("--out", help="write the result here instead of stdout")
        return sp

    sp = add("check-position", cmd_check_position, "test weak general position of forms")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--nvars", type=int, default=None, help="number of variables x0..x{n} (default: inferred)")
    sp.add_argument("--budget", type=int, default=200, help="number of sample points")

    sp = add("nullstellensatz", cmd_nullstellensatz, "minimal-s Nullstellensatz certificate")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--nvars", type=int, default=None, help="number of variables x0..x{n} (default: inferred)")
    sp.add_argument("--s-cap", type=int, default=None)

    sp = add("verify-certificate", cmd_verify, "verify a certificate by exact expansion")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--nvars", type=int, default=None, help="number of variables x0..x{n} (default: inferred)")
    sp.add_argument("--certificate", required=True)

    sp = add("jacobian", cmd_jacobian, "Jacobian determinant of n+1 forms")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--nvars", type=int, default=None, help="number of variables x0..x{n} (default: inferred)")
    sp.add_argument("--factor", action="store_true", help="also print its factorization")

    sp = add("degeneracy-locus", cmd_degeneracy, "run the degeneracy-locus pipeline")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--nvars", type=int, default=None, help="number of variables x0..x{n} (default: inferred)")
    sp.add_argument("--epsilon", type=Fraction, default=None)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--kappa", type=Fraction, default=Fraction(1))
    sp.add_argument("--all-factors", action="store_true")
    sp.add_argument("--assert-transversal", action="store_true")
    sp.add_argument("--json", help="also write the machine-readable summary here")

    sp = add("du-operator", cmd_du, "apply the twisted derivative D_u")
    sp.add_argument("--poly", required=True, help="polynomial, or @file")
    sp.add_argument("--ell", action="append", required=True,
                    help="logarithmic derivative u_j'/u_j in t; repeat once per variable")
    sp.add_argument("--coprime", action="store_true", help="also report gcd(F, D_u F)")

    sp = add("specialize-sigma", cmd_sigma, "obstruction set for specializing parameters")
    sp.add_argument("--poly", required=True, help="polynomial, or @file")
    sp.add_argument("--params", default=None, help="comma-separated parameter variables (default t)")

    sp = add("lattice-extend", cmd_lattice, "unimodular matrix with a given primitive first row")
    sp.add_argument("vector", type=int, nargs="+")

    sp = add("exceptional-set", cmd_exceptional, "exceptional set of a homogeneous form")
    sp.add_argument("--poly", required=True, help="polynomial, or @file")
    sp.add_argument("--epsilon", type=Fraction, default=Fraction(1, 10))
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--kappa", type=Fraction, default=Fraction(1))
    sp.add_argument("--relation", default=None, help="n1,n2: plane case with a monomial relation")
    sp.add_argument("--no-position-check", action="store_true")

    sp = add("gcd-params", cmd_gcd_params, "smallest m satisfying the gcd inequalities")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--epsilon", type=Fraction, required=True)
    sp.add_argument("--kappa", type=Fraction, default=Fraction(1))
    sp.add_argument("--L", type=int, default=None)

    sp = add("nevanlinna", cmd_nevanlinna, "counting-function table for an exp-polynomial curve")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--divisors", required=True)
    sp.add_argument("--rmax", type=float, required=True)
    sp.add_argument("--grid", type=int, default=20)
    sp.add_argument("--no-proximity", action="store_true", help="skip the proximity quadrature")
    sp.add_argument("--json", help="also write the quantile summary here")
    # accepted here too so that it may follow the subcommand
    sp.add_argument("--seed", type=int, default=None, dest="sub_seed")
    return p


def _apply_config(parser, path: str, command: str):
    """Turn the config file's values into option defaults; explicit flags still win."""
    from .io import parse_config

    cfg = parse_config(_read(path))
    sp = parser.subcommands[command]
    actions = {a.dest: a for a in sp._actions if a.option_strings}
    top = {a.dest: a for a in parser._actions if a.option_strings}
    sub_defaults, top_defaults = {}, {}
    for key, raw in cfg.items():
        dest = key.replace("-", "_")
        if dest in actions:
            table, act = sub_defaults, actions[dest]
            act.required = False
        elif dest in top and dest != "config":
            table, act = top_defaults, top[dest]
        else:
            raise _UsageError(f"config key {key!r} is not an option of {command}")
        if act.nargs == 0:
            table[dest] = raw.lower() in ("1", "true", "yes")
        else:
            try:
                table[dest] = act.type(raw) if act.type else raw
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise _UsageError(f"config key {key!r}: {exc}") from None
    sp.set_defaults(**sub_defaults)
    parser.set_defaults(**top_defaults)


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    try:
        known, _ = pre.parse_known_args(argv)
        command = next((a for a in argv if a in parser.subcommands), None)
        if known.config and command:
            _apply_config(parser, known.config, command)
        args = parser.parse_args(argv)
    except _MissingInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except DefectForgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    seed = getattr(args, "sub_seed", None)
    random.seed(seed if seed is not None else args.seed)
    try:
        return args.func(args)
    except _MissingInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DefectForgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
