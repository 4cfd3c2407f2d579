"""Numeric identity checks between operator words on sphere tensor fields.

These verify, on sampled fields, rewriting identities between raw i/j/d
words and divergence/derivative forms that the symbolic module never
performs (no commutator rewriting there), plus eigenvalue fixtures.
"""
from __future__ import annotations

import numpy as np

from .field import TangentField, harmonic_scalar
from .grid import SphereGrid
from .ops import divergence, inner_d, metric_i, sphere_inner, trace_j

__all__ = ["identity_check_623", "eigenvalue_residual", "second_order_conjecture_residual"]


def _rel(diff: TangentField, scale: float) -> float:
    return diff.max_abs() / scale if scale > 0 else diff.max_abs()


def identity_check_623(f: TangentField) -> dict[str, float]:
    """Residuals of the three rank-2 rewriting identities on the 2-sphere.

    On rank-2 symmetric fields:
        j d^2        = 1/3 d delta + 1/2 delta d + 1/6 d^2 j
        j^2 d^2      = 2/3 delta^2 + 1/3 (delta d) j
        -1/2 j d^2 - 1/8 i j^2 d^2
                     = -1/6 d delta - 1/4 delta d - 1/24 i (delta d) j
                       - 1/12 d^2 j - 1/12 i delta^2
    The contraction of a rank-2 field is a scalar, on which the rough
    Laplacian is delta d.
    """
    if f.grid.n != 3 or f.m != 2:
        raise ValueError("identity fixtures act on rank-2 fields over S^2")
    d2f = inner_d(inner_d(f))
    jf = trace_j(f)
    scale = max(f.max_abs(), 1e-30)

    jd2 = trace_j(d2f)
    rhs1 = (
        inner_d(divergence(f)) * (1.0 / 3.0)
        + divergence(inner_d(f)) * 0.5
        + inner_d(inner_d(jf)) * (1.0 / 6.0)
    )
    res1 = _rel(jd2 - rhs1, max(jd2.max_abs(), 1e-30))

    jjd2 = trace_j(jd2)
    rhs2 = divergence(divergence(f)) * (2.0 / 3.0) + divergence(inner_d(jf)) * (1.0 / 3.0)
    res2 = _rel(jjd2 - rhs2, max(jjd2.max_abs(), 1e-30))

    lhs3 = jd2 * (-0.5) + metric_i(jjd2) * (-0.125)
    rhs3 = (
        inner_d(divergence(f)) * (-1.0 / 6.0)
        + divergence(inner_d(f)) * (-0.25)
        + metric_i(divergence(inner_d(jf))) * (-1.0 / 24.0)
        + inner_d(inner_d(jf)) * (-1.0 / 12.0)
        + metric_i(divergence(divergence(f))) * (-1.0 / 12.0)
    )
    res3 = _rel(lhs3 - rhs3, max(lhs3.max_abs(), 1e-30))
    return {"jd2_split": res1, "j2d2_split": res2, "second_order_forms": res3}


def eigenvalue_residual(grid: SphereGrid, degree: int) -> float:
    """Residual of (delta d) f = -l (l + n - 2) f on a degree-l harmonic."""
    f = harmonic_scalar(grid, degree)
    lam = degree * (degree + grid.n - 2)
    lap = divergence(inner_d(f))
    resid = lap + lam * f
    return resid.max_abs() / max(f.max_abs(), 1e-30)


def second_order_conjecture_residual(f: TangentField) -> dict[str, float]:
    """Symmetry evidence for the conjectured operator at general rank.

    Returns the asymmetry of the quadratic form of
        -sum_p 2^(-2p)/(p!(p+1)!(m-2p)!) i^p j^(p+1) d^2
    on the field against a reference copy; reported, never asserted, for
    ranks beyond the proved cases.
    """
    import math

    m = f.m
    d2f = inner_d(inner_d(f))
    acc = None
    for p in range(m // 2 + 1):
        term = d2f
        for _ in range(p + 1):
            term = trace_j(term)
        for _ in range(p):
            term = metric_i(term)
        coeff = -(2.0 ** (-2 * p)) / (
            math.factorial(p) * math.factorial(p + 1) * math.factorial(m - 2 * p)
        )
        acc = term * coeff if acc is None else acc + term * coeff
    quad = sphere_inner(acc, f)
    return {"imag_part": abs(quad.imag) / max(abs(quad), 1e-30), "value": quad.real}
