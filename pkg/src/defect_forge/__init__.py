"""Exact degeneracy loci, exceptional sets and Nullstellensatz certificates
for hypersurfaces in projective space, with Nevanlinna numerics for
exp-polynomial curves."""

from .algebra.multipoly import MultiPoly
from .algebra.parser import parse_forms, parse_poly
from .degeneracy import degeneracy_locus, jacobian_det
from .errors import (
    CurveOnDivisor,
    DefectForgeError,
    Inconclusive,
    InvalidInput,
    NotInPosition,
    ParseError,
    PipelineFailure,
    PreconditionViolated,
    ResourceLimit,
)
from .exceptional import build_H, build_Z_n2, build_Z_projective, gcd_params
from .lattice import UnimodularMatrix, extend_to_basis
from .nullstellensatz import check_weak_general_position, find_certificate, verify_certificate
from .specialization import compute_sigma

__version__ = "0.1.0"

__all__ = [
    "CurveOnDivisor", "DefectForgeError", "Inconclusive", "InvalidInput", "MultiPoly",
    "NotInPosition", "ParseError", "PipelineFailure", "PreconditionViolated", "ResourceLimit",
    "UnimodularMatrix", "build_H", "build_Z_n2", "build_Z_projective", "check_weak_general_position",
    "compute_sigma", "degeneracy_locus", "extend_to_basis", "find_certificate", "gcd_params",
    "jacobian_det", "parse_forms", "parse_poly", "verify_certificate",
]
