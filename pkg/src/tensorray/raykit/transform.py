"""Discrete ray transform of symmetric tensor fields (n = 2).

The transform integrates the monomial contraction of the field along each
grid line with the trapezoid rule.  Volume samples are looked up with
separable Lagrange interpolation (order 6); points outside the volume
grid contribute zero, which the decay envelope justifies.
"""
from __future__ import annotations

import numpy as np

from .. import symtensor as st
from .._interp import interp2d
from .lines import LineGrid, RaySample
from .volume import VolumeField

__all__ = ["ray_transform", "monomial_weights"]


def monomial_weights(n: int, m: int, xi: np.ndarray) -> np.ndarray:
    """Per-direction contraction weights: mult_I * prod_a xi[I_a].

    xi has shape (n, K); the result (dim(n, m), K) turns sorted components
    into the full monomial contraction sum_I f_I xi^I.
    """
    _, _, mult, idx_array = st._tables(n, m)
    if m == 0:
        return np.ones((1, xi.shape[1]))
    return mult[:, None] * np.prod(xi[idx_array], axis=1)


def ray_transform(
    f: VolumeField,
    grid: LineGrid,
    truncation: float | None = None,
    interp_order: int = 6,
) -> RaySample:
    """Line integrals of <f(x + t xi), xi^m> over the grid of lines."""
    if f.n != 2:
        raise ValueError("the line manifold machinery supports n = 2")
    if f.dual:
        raise ValueError("ray transform acts on primal-grid fields")
    t_max = f.extent if truncation is None else float(truncation)
    if t_max > f.extent + 1e-12:
        raise ValueError(
            f"truncation radius {t_max} exceeds the grid extent {f.extent}"
        )
    h = f.spacing
    nt = int(round(2.0 * t_max / h)) + 1
    t = np.linspace(-t_max, t_max, nt)
    w_t = np.full(nt, t[1] - t[0])
    w_t[0] *= 0.5
    w_t[-1] *= 0.5

    xi = grid.xi()
    eta = grid.eta()
    mono = monomial_weights(2, f.m, xi)  # (D, Ndir)
    p = grid.offsets()
    out = np.empty((grid.num_directions, grid.offset_count), dtype=np.complex128)
    inv_h = 1.0 / h
    for i in range(grid.num_directions):
        # collapse components first: the integrand is one scalar field per direction
        integrand = np.einsum("d,d...->...", mono[:, i], f.values)
        x1 = p[:, None] * eta[0, i] + t[None, :] * xi[0, i]
        x2 = p[:, None] * eta[1, i] + t[None, :] * xi[1, i]
        c1 = (x1 + f.extent) * inv_h
        c2 = (x2 + f.extent) * inv_h
        vals = interp2d(integrand, c1.ravel(), c2.ravel(), interp_order, interp_order)
        out[i] = vals.reshape(grid.offset_count, nt) @ w_t
    return RaySample(grid, out, f.m)
