"""Symmetric tensor fields sampled on Cartesian grids, with Fourier machinery.

Fields live on the uniform grid x_i = -L + i h, h = 2L/shape, per axis.
Component arrays are indexed by sorted multi-indices, shape (D,) + (shape,)*n.
The stored samples must decay below an envelope threshold at the grid
boundary: this is the discrete stand-in for fast decay, and the Fourier
transforms assume it.

The Fourier convention is the symmetric one,
    F(y) = (2 pi)^(-n/2) integral exp(-i <y, x>) f(x) dx,
discretized with exact phase factors for the grid offsets; the dual grid
has spacing pi/L and extent pi/h.
"""
from __future__ import annotations

import io

import numpy as np

from .. import symtensor as st

__all__ = [
    "VolumeField",
    "fourier_volume",
    "inverse_fourier_volume",
    "solenoidal_project",
    "gaussian_scalar",
    "curl_gaussian",
    "curl_curl_gaussian",
    "save_volume",
    "load_volume",
]


class VolumeField:
    """Rank-m symmetric tensor field sampled on a centered Cartesian grid."""

    def __init__(self, n: int, m: int, extent: float, values: np.ndarray, dual: bool = False):
        if n not in (2, 3):
            raise ValueError("volume fields support n in {2, 3}")
        values = np.asarray(values, dtype=np.complex128)
        d = st.dim(n, m)
        if values.ndim != n + 1 or values.shape[0] != d:
            raise ValueError(f"expected values of shape ({d},) + grid, got {values.shape}")
        if len(set(values.shape[1:])) != 1:
            raise ValueError("grid must have equal samples per axis")
        self.n = n
        self.m = m
        self.extent = float(extent)
        self.values = values
        self.dual = dual  # True when the samples live on the frequency grid

    @property
    def shape(self) -> int:
        return self.values.shape[1]

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / self.shape

    def axis_coords(self) -> np.ndarray:
        return -self.extent + self.spacing * np.arange(self.shape)

    def envelope_residual(self) -> float:
        """Largest boundary magnitude relative to the field peak."""
        peak = float(np.max(np.abs(self.values)))
        if peak == 0.0:
            return 0.0
        border = 0.0
        for axis in range(1, self.n + 1):
            sl_lo = [slice(None)] * (self.n + 1)
            sl_lo[axis] = 0
            sl_hi = [slice(None)] * (self.n + 1)
            sl_hi[axis] = -1
            border = max(
                border,
                float(np.max(np.abs(self.values[tuple(sl_lo)]))),
                float(np.max(np.abs(self.values[tuple(sl_hi)]))),
            )
        return border / peak

    def __add__(self, other: "VolumeField") -> "VolumeField":
        self._check_like(other)
        return VolumeField(self.n, self.m, self.extent, self.values + other.values, self.dual)

    def __sub__(self, other: "VolumeField") -> "VolumeField":
        self._check_like(other)
        return VolumeField(self.n, self.m, self.extent, self.values - other.values, self.dual)

    def __mul__(self, scalar) -> "VolumeField":
        return VolumeField(self.n, self.m, self.extent, self.values * scalar, self.dual)

    __rmul__ = __mul__

    def _check_like(self, other: "VolumeField") -> None:
        if (self.n, self.m, self.extent, self.shape, self.dual) != (
            other.n,
            other.m,
            other.extent,
            other.shape,
            other.dual,
        ):
            raise ValueError("volume fields are not aligned")

    def l2_norm(self) -> float:
        """Discrete L2 norm with the cell measure of the carrying grid."""
        cell = self.spacing**self.n
        _, _, mult, _ = st._tables(self.n, self.m)
        dens = np.einsum("d,d...->...", mult, np.abs(self.values) ** 2)
        return float(np.sqrt(np.sum(dens) * cell))

    def __repr__(self) -> str:
        kind = "dual" if self.dual else "primal"
        return f"VolumeField(n={self.n}, m={self.m}, shape={self.shape}, extent={self.extent}, {kind})"


def _dual_extent(f: VolumeField) -> float:
    dy = np.pi / f.extent
    return dy * f.shape / 2.0


def fourier_volume(f: VolumeField) -> VolumeField:
    """Componentwise symmetric-normalization Fourier transform onto the dual grid."""
    shape = f.shape
    h = f.spacing
    x0 = -f.extent
    dy = 2.0 * np.pi / (shape * h)
    y0 = -shape // 2 * dy
    vals = f.values.copy()
    sign = (-1.0) ** np.arange(shape)
    k = np.arange(shape)
    phase = np.exp(-1j * (y0 + k * dy) * x0)
    for axis in range(1, f.n + 1):
        sl = [None] * (f.n + 1)
        sl[axis] = slice(None)
        vals = vals * sign[tuple(sl)]
        vals = np.fft.fft(vals, axis=axis)
        vals = vals * phase[tuple(sl)]
    vals *= (h / np.sqrt(2.0 * np.pi)) ** f.n
    return VolumeField(f.n, f.m, _dual_extent(f), vals, dual=not f.dual)


def inverse_fourier_volume(f: VolumeField) -> VolumeField:
    """Inverse of fourier_volume (exp(+i<y,x>) kernel, same normalization)."""
    shape = f.shape
    dy = f.spacing
    y0 = -f.extent
    h = 2.0 * np.pi / (shape * dy)
    x0 = -shape // 2 * h
    vals = f.values.copy()
    sign = (-1.0) ** np.arange(shape)
    k = np.arange(shape)
    phase = np.exp(1j * (x0 + k * h) * y0)
    for axis in range(1, f.n + 1):
        sl = [None] * (f.n + 1)
        sl[axis] = slice(None)
        vals = vals * sign[tuple(sl)]
        vals = np.fft.ifft(vals, axis=axis) * shape
        vals = vals * phase[tuple(sl)]
    vals *= (dy / np.sqrt(2.0 * np.pi)) ** f.n
    return VolumeField(f.n, f.m, _dual_extent(f), vals, dual=not f.dual)


def solenoidal_project(f: VolumeField) -> VolumeField:
    """Project onto solenoidal fields: tangential projection of the transform.

    Applies delta - y y^T/|y|^2 to every index of the Fourier transform at
    every nonzero frequency and zeroes the origin cell (which also removes
    the mean); scalars pass through the zero-fill only.  The output is the
    inverse transform, again on the primal grid.
    """
    if f.m == 0:
        # scalars have no indices: nothing to project
        return VolumeField(f.n, 0, f.extent, f.values.copy(), f.dual)
    fh = fourier_volume(f)
    y_axes = fh.axis_coords()
    grids = np.meshgrid(*([y_axes] * f.n), indexing="ij")
    y = np.stack(grids)  # (n, grid...)
    ny2 = np.sum(y**2, axis=0)
    origin = ny2 == 0.0
    ny2_safe = np.where(origin, 1.0, ny2)
    # expand to full index arrays, project every slot, recompress
    r2p = st._raw2pos(f.n, f.m)
    full = fh.values[r2p].reshape((f.n,) * f.m + fh.values.shape[1:])
    for axis in range(f.m):
        moved = np.moveaxis(full, axis, 0)
        contracted = np.einsum("j...,j...->...", y, moved)
        moved = moved - y * (contracted / ny2_safe)[None]
        full = np.moveaxis(moved, 0, axis)
    full[(...,) + np.nonzero(origin)] = 0.0  # origin cell zero-fill
    idx_array = st._tables(f.n, f.m)[3]
    rows = [full[tuple(idx)] for idx in idx_array]
    proj = VolumeField(f.n, f.m, fh.extent, np.stack(rows), dual=True)
    return inverse_fourier_volume(proj)


def tangential_residual_dual(fh: VolumeField, floor: float = 1e-9) -> float:
    """Max contraction of the dual-grid samples with the frequency vector.

    Relative to |y| times the local field magnitude; cells with magnitude
    below floor * peak are ignored (their contraction is roundoff noise).
    """
    if fh.m == 0:
        return 0.0
    grid_shape = fh.values.shape[1:]
    grids = np.meshgrid(*([fh.axis_coords()] * fh.n), indexing="ij")
    y = np.stack(grids)
    ny = np.sqrt(np.sum(y**2, axis=0))
    r2p = st._raw2pos(fh.n, fh.m)
    full = fh.values[r2p].reshape((fh.n,) * fh.m + grid_shape)
    rest = full.reshape((fh.n, fh.n ** (fh.m - 1)) + grid_shape)
    contracted = np.einsum("j...,jr...->r...", y, rest)
    peak = float(np.max(np.abs(fh.values)))
    if peak == 0.0:
        return 0.0
    local = np.max(np.abs(full), axis=tuple(range(fh.m)))
    contr_mag = np.max(np.abs(contracted), axis=0)
    mask = local > floor * peak
    if not np.any(mask):
        return 0.0
    denom = np.where(ny * local > 0, ny * local, 1.0)
    return float(np.max(contr_mag[mask] / denom[mask]))


def eval_dual_at_points(f: VolumeField, pts: np.ndarray) -> np.ndarray:
    """Exact transform values at arbitrary frequency points.

    Evaluates the defining discrete transform directly (separable sums
    over the sample grid), i.e. the trigonometric interpolant of the dual
    samples.  Used where a local interpolant's kinked error would later
    be differentiated; costs O(P * shape^n) per component.
    """
    if f.dual:
        raise ValueError("point evaluation transforms primal-grid fields")
    pts = np.asarray(pts, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] != f.n:
        raise ValueError(f"points must have shape ({f.n}, P)")
    x = f.axis_coords()
    scale = (f.spacing / np.sqrt(2.0 * np.pi)) ** f.n
    phases = [np.exp(-1j * np.outer(pts[a], x)) for a in range(f.n)]  # (P, S) each
    out = np.empty((f.values.shape[0], pts.shape[1]), dtype=np.complex128)
    for comp in range(f.values.shape[0]):
        if f.n == 2:
            inner = f.values[comp] @ phases[1].T  # (S, P)
            out[comp] = np.einsum("px,xp->p", phases[0], inner)
        else:
            t1 = np.tensordot(f.values[comp], phases[2], axes=([2], [1]))  # (S, S, P)
            t2 = np.einsum("abp,pb->ap", t1, phases[1])  # (S, P)
            out[comp] = np.einsum("ap,pa->p", phases[0], t2)
    return out * scale


# ---- analytic test fields ----------------------------------------------------


def _grid_coords(n: int, extent: float, shape: int) -> np.ndarray:
    axis = -extent + (2.0 * extent / shape) * np.arange(shape)
    return np.stack(np.meshgrid(*([axis] * n), indexing="ij"))


def gaussian_scalar(
    n: int = 2,
    extent: float = 12.0,
    shape: int = 256,
    width: float = 1.0,
    center: tuple[float, ...] | None = None,
) -> VolumeField:
    """exp(-|x - c|^2 / (2 w^2)) as a rank-0 field."""
    x = _grid_coords(n, extent, shape)
    if center is not None:
        x = x - np.asarray(center).reshape((n,) + (1,) * n)
    vals = np.exp(-np.sum(x**2, axis=0) / (2.0 * width**2))
    return VolumeField(n, 0, extent, vals[None].astype(np.complex128))


def _anisotropic_gaussian(x: np.ndarray, widths, center) -> np.ndarray:
    n = x.shape[0]
    w = np.asarray(widths).reshape((n,) + (1,) * n)
    c = np.asarray(center).reshape((n,) + (1,) * n)
    return np.exp(-np.sum(((x - c) / w) ** 2, axis=0) / 2.0)


def curl_gaussian(
    extent: float = 12.0,
    shape: int = 256,
    widths=(1.1, 0.8),
    center=(0.3, -0.2),
) -> VolumeField:
    """Divergence-free vector field (-d2 w, d1 w) with a Gaussian potential."""
    x = _grid_coords(2, extent, shape)
    w = _anisotropic_gaussian(x, widths, center)
    wx = np.asarray(widths)
    d1 = -(x[0] - center[0]) / wx[0] ** 2 * w
    d2 = -(x[1] - center[1]) / wx[1] ** 2 * w
    vals = np.stack([-d2, d1])
    return VolumeField(2, 1, extent, vals.astype(np.complex128))


def curl_curl_gaussian(
    extent: float = 12.0,
    shape: int = 256,
    widths=(1.0, 0.9),
    center=(-0.25, 0.35),
) -> VolumeField:
    """Solenoidal rank-2 field (d22 w, -d12 w; -d12 w, d11 w)."""
    x = _grid_coords(2, extent, shape)
    w = _anisotropic_gaussian(x, widths, center)
    wx = np.asarray(widths)
    u = (x[0] - center[0]) / wx[0] ** 2
    v = (x[1] - center[1]) / wx[1] ** 2
    d11 = (u**2 - 1.0 / wx[0] ** 2) * w
    d22 = (v**2 - 1.0 / wx[1] ** 2) * w
    d12 = u * v * w
    vals = np.stack([d22, -d12, d11])  # sorted components (1,1), (1,2), (2,2)
    return VolumeField(2, 2, extent, vals.astype(np.complex128))


# ---- header + binary serialization ----------------------------------------------


def save_volume(f: VolumeField, path: str) -> None:
    """Write the header+binary format (real float64 samples, row-major).

    The format stores real samples; writing a field with a non-negligible
    imaginary part is refused.
    """
    if float(np.max(np.abs(f.values.imag))) > 1e-12 * max(float(np.max(np.abs(f.values))), 1e-300):
        raise ValueError("binary volume format stores real fields only")
    indices, _, _, _ = st._tables(f.n, f.m)
    comp_names = " ".join(",".join(str(i + 1) for i in idx) or "-" for idx in indices)
    header = (
        "TENSORRAY-VOLUME 1\n"
        f"n={f.n} m={f.m} extent={f.extent!r} shape={f.shape}\n"
        f"components={comp_names}\n"
        "layout=component-major row-major float64\n"
        "end-header\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(np.ascontiguousarray(f.values.real).tobytes())


def load_volume(path: str) -> VolumeField:
    with open(path, "rb") as fh:
        data = fh.read()
    end = data.find(b"end-header\n")
    if not data.startswith(b"TENSORRAY-VOLUME 1\n") or end < 0:
        raise ValueError(f"{path} is not a tensorray volume file")
    header_lines = data[:end].decode("ascii").splitlines()
    fields = dict(
        item.split("=", 1) for line in header_lines[1:] if "=" in line for item in line.split() if "=" in item
    )
    n = int(fields["n"])
    m = int(fields["m"])
    extent = float(fields["extent"])
    shape = int(fields["shape"])
    raw = np.frombuffer(data[end + len(b"end-header\n") :], dtype=np.float64)
    d = st.dim(n, m)
    expected = d * shape**n
    if raw.size != expected:
        raise ValueError(f"payload has {raw.size} doubles, expected {expected}")
    values = raw.reshape((d,) + (shape,) * n).astype(np.complex128)
    return VolumeField(n, m, extent, values)
