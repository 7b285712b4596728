"""Quadratic machinery behind the local expansion bound, and the polynomial
identities used to certify its two auxiliary inequalities."""

from .appendix import verify_ineq17, verify_ineq18
from .polynomial import IntPolynomial
from .quadratics import (
    ExpansionParams,
    MonicQuadratic,
    claim_alpha,
    claim_roots,
    eval_L,
    interlace_check,
    sweep_claims,
    sweep_eq8,
    verify_aux_chain,
)

__all__ = [
    "ExpansionParams",
    "IntPolynomial",
    "MonicQuadratic",
    "claim_alpha",
    "claim_roots",
    "eval_L",
    "interlace_check",
    "sweep_claims",
    "sweep_eq8",
    "verify_aux_chain",
    "verify_ineq17",
    "verify_ineq18",
]
