"""Consistency checks tying the independent computation paths together.

slice_check: the transform of the line integrals against the volume
transform contracted with the direction monomial (the projection-slice
relation for tensor fields).

cross_path_check: the iterated line-space operator against the rank
recurrence applied through the sphere calculus on the volume transform.
These two routes share no code beyond the Fourier transforms, so their
agreement validates the recurrence coefficients on real data.

sphere_slice_integral_check: the closed form for circle integrals of
direction monomials over S^2 intersected with a hyperplane.
"""
from __future__ import annotations

import math

import numpy as np

from .. import symtensor as st
from .._interp import interp2d
from ..opcalc import p_polys
from ..spherecalc.field import TangentField, tangential_project
from ..spherecalc.ops import apply_ncpoly
from .deltaxi import delta_xi_powers
from .fourier import fourier_ray
from .lines import LineGrid, RaySample
from .transform import monomial_weights, ray_transform
from .volume import VolumeField, eval_dual_at_points, fourier_volume

__all__ = ["slice_check", "cross_path_check", "sphere_slice_integral_check"]


def _exact_dual_circle(f: VolumeField, radius: float, circle) -> TangentField:
    """Transform samples on a circle by exact point evaluation.

    The recurrence route differentiates these samples spectrally along
    the circle, so they must be free of local-interpolation kinks.
    """
    comps = eval_dual_at_points(f, radius * circle.nodes.T)
    g = TangentField(circle, f.m, comps)
    return tangential_project(g) if f.m > 0 else g


def _band_mask(q: np.ndarray, fhat: VolumeField, lo_frac: float = 0.05) -> np.ndarray:
    from .norms import _active_radius

    hi = 0.9 * _active_radius(fhat)
    lo = max(lo_frac * hi, 2.5 * abs(q[1] - q[0]))
    return (np.abs(q) > lo) & (np.abs(q) < hi)


def slice_check(f: VolumeField, phi: RaySample | None = None, line_grid: LineGrid | None = None) -> dict:
    """Residual of the projection-slice relation on a trusted frequency band.

    Compares the offset-transform of the line integrals with
    sqrt(2 pi) * <fhat(q eta), xi^m> pointwise over directions and
    offsets whose |q| lies inside the band where the transform has
    meaningful magnitude.
    """
    if line_grid is None:
        line_grid = phi.grid if phi is not None else LineGrid.build(512, f.extent, 512)
    if phi is None:
        phi = ray_transform(f, line_grid)
    phat = fourier_ray(phi)
    fhat = fourier_volume(f)
    grid = phat.grid
    q = grid.offsets()
    xi = grid.xi()
    eta = grid.eta()
    mono = monomial_weights(2, f.m, xi)  # (D, Ndir)

    axes = fhat.axis_coords()
    inv_dy = 1.0 / fhat.spacing
    d = st.dim(2, f.m)
    y1 = q[None, :] * eta[0][:, None]
    y2 = q[None, :] * eta[1][:, None]
    c0 = ((y1 - axes[0]) * inv_dy).ravel()
    c1 = ((y2 - axes[0]) * inv_dy).ravel()
    rhs = np.zeros(phat.values.shape, dtype=np.complex128)
    for comp in range(d):
        vals = interp2d(fhat.values[comp], c0, c1, 6, 6).reshape(rhs.shape)
        rhs += mono[comp][:, None] * vals
    rhs *= math.sqrt(2.0 * math.pi)

    band = _band_mask(q, fhat)
    diff = np.abs(phat.values[:, band] - rhs[:, band])
    scale = max(float(np.max(np.abs(phat.values[:, band]))), 1e-300)
    return {
        "residual": float(np.max(diff)) / scale,
        "band": [float(np.min(np.abs(q[band]))), float(np.max(np.abs(q[band])))],
        "scale": scale,
    }


def cross_path_check(
    f: VolumeField,
    r: int,
    phi: RaySample | None = None,
    line_grid: LineGrid | None = None,
    powers: list[RaySample] | None = None,
) -> dict:
    """Iterated line-space operator vs the rank recurrence, order r.

    Left: Delta^r applied to the transform of the line integrals (finite
    differences on the line manifold), then the offset transform.  Right:
    sum over k of the recurrence polynomials applied to the volume
    transform restricted to circles, contracted with the direction
    monomial.  Returns the max relative deviation over the trusted band.
    """
    m = f.m
    if line_grid is None:
        line_grid = phi.grid if phi is not None else LineGrid.build(512, f.extent, 512)
    if phi is None:
        phi = ray_transform(f, line_grid)
    if powers is None:
        powers = delta_xi_powers(phi, r)
    lhs = fourier_ray(powers[r])
    fhat = fourier_volume(f)

    grid = lhs.grid
    q = grid.offsets()
    band = _band_mask(q, fhat)
    circle = grid.directions
    nd = grid.num_directions
    polys = {k: p.specialize(2) for k, p in p_polys(r, m).items() if not p.is_zero()}
    monos = {
        k: monomial_weights(2, m + 2 * k, grid.xi()) for k in polys
    }  # contraction weights per output rank

    rhs = np.zeros_like(lhs.values)
    quarter = nd // 4
    idx_pos = (np.arange(nd) + quarter) % nd  # node of +eta(theta_i)
    idx_neg = (np.arange(nd) + 3 * quarter) % nd
    circle_cache: dict[float, TangentField] = {}
    for j in np.nonzero(band)[0]:
        radius = abs(q[j])
        g = circle_cache.get(radius)
        if g is None:
            g = _exact_dual_circle(f, radius, circle)
            circle_cache[radius] = g
        node_idx = idx_pos if q[j] > 0 else idx_neg
        acc = np.zeros(nd, dtype=np.complex128)
        for k, poly in polys.items():
            h = apply_ncpoly(poly, g)  # rank m + 2k on the circle
            acc += np.einsum("di,di->i", monos[k], h.values[:, node_idx])
        rhs[:, j] = math.sqrt(2.0 * math.pi) * acc

    diff = np.abs(lhs.values[:, band] - rhs[:, band])
    scale = max(float(np.max(np.abs(lhs.values[:, band]))), 1e-300)
    return {
        "r": r,
        "m": m,
        "residual": float(np.max(diff)) / scale,
        "band": [float(np.min(np.abs(q[band]))), float(np.max(np.abs(q[band])))],
    }


def sphere_slice_integral_check(y: np.ndarray, mk: int, num_points: int = 2048) -> dict:
    """Circle integrals of direction monomials vs the closed form (n = 3).

    Integrates xi^(tensor 2*mk) over the unit circle S^2 intersected with
    the plane orthogonal to y and compares componentwise against

        2 Gamma(mk + 1/2) pi^((n-2)/2) / Gamma(mk + (n-1)/2)

    times the symmetrized projector power; for n = 3 the Gamma ratio is
    2 Gamma(mk+1/2) sqrt(pi) / mk!.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (3,):
        raise ValueError("the hyperplane-circle fixture lives in n = 3")
    if np.allclose(y, 0.0):
        raise ValueError("y must be nonzero")
    # orthonormal frame of y-perp
    a = np.array([1.0, 0.0, 0.0]) if abs(y[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(y, a)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(y, e1)
    e2 /= np.linalg.norm(e2)
    alpha = 2.0 * np.pi * np.arange(num_points) / num_points
    xi = np.outer(e1, np.cos(alpha)) + np.outer(e2, np.sin(alpha))  # (3, P)

    rank = 2 * mk
    indices, _, _, _ = st._tables(3, rank)
    w = 2.0 * np.pi / num_points
    comps = np.empty(len(indices), dtype=np.complex128)
    for pos, idx in enumerate(indices):
        comps[pos] = w * np.sum(np.prod(xi[list(idx)], axis=0)) if rank else 2.0 * np.pi
    lhs = st.SymTensor(3, rank, comps)

    prefactor = 2.0 * math.gamma(mk + 0.5) * math.pi**0.5 / math.gamma(mk + 1.0)
    rhs = st.eps_power(y, mk) * prefactor
    scale = max(rhs.max_abs(), 1e-300)
    return {
        "mk": mk,
        "residual": float((lhs - rhs).max_abs()) / scale,
    }
