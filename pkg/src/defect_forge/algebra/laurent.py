"""Laurent-monomial changes of variables given by unimodular matrices.

With new variables Y = x^A (row k of A is the exponent vector of Y_k), the
monomial x^e becomes Y^(e A^-1).  ``forward`` applies that rule, ``inverse``
the rule e -> e A.  The transformed Laurent polynomial is split into the
componentwise-minimum monomial and a core polynomial with no monomial factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidInput
from ..lattice import UnimodularMatrix
from .multipoly import MultiPoly


@dataclass(frozen=True)
class LaurentFactorization:
    monomial: tuple
    core: MultiPoly

    def reconstruct_terms(self) -> dict:
        """Laurent terms of monomial * core (exponents may be negative)."""
        return {
            tuple(a + b for a, b in zip(e, self.monomial)): c for e, c in self.core.terms.items()
        }


def default_names(n: int, direction: str) -> tuple:
    if direction == "forward":
        return ("L",) + tuple(f"X{k}" for k in range(2, n + 1))
    return tuple(f"x{k}" for k in range(1, n + 1))


def transform_exponent(e, M: UnimodularMatrix) -> tuple:
    return M.apply_row(e)


def monomial_transform(
    p: MultiPoly, A: UnimodularMatrix, direction: str = "forward", new_vars=None
) -> LaurentFactorization:
    if not isinstance(A, UnimodularMatrix):
        A = UnimodularMatrix(A)
    if A.n != p.nvars:
        raise InvalidInput(f"matrix size {A.n} does not match {p.nvars} variables")
    if direction not in ("forward", "inverse"):
        raise InvalidInput(f"unknown direction {direction!r}")
    M = A.inverse() if direction == "forward" else A
    names = tuple(new_vars) if new_vars is not None else default_names(A.n, direction)
    if len(names) != A.n:
        raise InvalidInput("wrong number of new variable names")
    if p.is_zero():
        return LaurentFactorization((0,) * A.n, MultiPoly(names, {}, check=False))
    laurent = {}
    for e, c in p.terms.items():
        laurent[M.apply_row(e)] = c
    m = tuple(min(e[k] for e in laurent) for k in range(A.n))
    core = {tuple(a - b for a, b in zip(e, m)): c for e, c in laurent.items()}
    return LaurentFactorization(m, MultiPoly(names, core, check=False))


def laurent_to_poly(terms: dict, variables) -> tuple[tuple, MultiPoly]:
    """Clear negative exponents: returns (shift, polynomial) with terms = x^shift * poly."""
    if not terms:
        return (0,) * len(variables), MultiPoly(variables, {}, check=False)
    n = len(variables)
    m = tuple(min(e[k] for e in terms) for k in range(n))
    out = {}
    for e, c in terms.items():
        out[tuple(a - b for a, b in zip(e, m))] = c
    return m, MultiPoly(variables, out)
