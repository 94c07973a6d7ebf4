"""Exact tests for supporting hyperplanes of finite vector sets."""

from .exact import (ParseError, Sign, angular_compare, det3, format_decimal,
                    format_rational, orient2d, parse_decimal, sign_det3)
from .separability import (ContractViolation, FarkasWitness, FastVerdict,
                           InputError, Outcome, SeparatingFunctional,
                           SignQuadruple, Verdict, VectorSet,
                           build_functional_4x3, coplanar_reduce, decide,
                           farkas_oracle, pairwise_plane_check, rank_and_basis,
                           separable_2d, theorem3_signs, verify_certificate)

__all__ = [
    "ContractViolation", "FarkasWitness", "FastVerdict", "InputError",
    "Outcome", "ParseError", "SeparatingFunctional", "Sign", "SignQuadruple",
    "Verdict", "VectorSet", "angular_compare", "build_functional_4x3",
    "coplanar_reduce", "decide", "det3", "farkas_oracle", "format_decimal",
    "format_rational", "orient2d", "pairwise_plane_check", "parse_decimal",
    "rank_and_basis", "separable_2d", "sign_det3", "theorem3_signs",
    "verify_certificate",
]
