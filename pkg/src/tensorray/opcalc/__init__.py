"""Exact noncommutative operator calculus over Q(n).

Derives the sphere operators entering the norm identities for the ray
transform: the recurrence polynomials, the algebraic contraction
operators, their weighted assembly, and the self-adjoint symmetrization,
all with exact rational-function coefficients.
"""
from .dimrat import N_SYMBOL, DimRational, PoleError, parse_coefficient
from .ncpoly import D, DELTA, I, J, NCPoly, RankFlowError, Word, adjoint
from .pipeline import (
    MAX_ORDER,
    a_operator,
    a_p_coefficient,
    a_tilde,
    b_operator,
    c_operator,
    derivation_report,
    gamma_coef,
    p_polys,
    radial_split,
    rank_flow_check,
)
from .reference import (
    ref_a_tilde_first,
    ref_a_tilde_second,
    ref_a_zeroth,
    ref_p1,
    reference_compare,
)
from .textform import ParseError, parse, serialize

__all__ = [
    "N_SYMBOL",
    "DimRational",
    "PoleError",
    "parse_coefficient",
    "I",
    "J",
    "D",
    "DELTA",
    "Word",
    "NCPoly",
    "RankFlowError",
    "adjoint",
    "MAX_ORDER",
    "p_polys",
    "radial_split",
    "gamma_coef",
    "c_operator",
    "b_operator",
    "a_tilde",
    "a_operator",
    "a_p_coefficient",
    "rank_flow_check",
    "derivation_report",
    "ref_p1",
    "ref_a_zeroth",
    "ref_a_tilde_first",
    "ref_a_tilde_second",
    "reference_compare",
    "serialize",
    "parse",
    "ParseError",
]
