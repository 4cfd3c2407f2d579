"""Separable Lagrange interpolation on uniform grids.

These gathers are the hot inner loops of the line-integral and line-space
derivative machinery.  Two interchangeable implementations are provided:
a numba-jitted kernel and a pure-numpy path.  The numpy path is selected
when numba is unavailable or when the environment variable
TENSORRAY_NO_NUMBA is set to a non-empty value other than "0".

Coordinates are in index units (node j sits at coordinate j).  Axis 0 can
wrap periodically.  Out-of-range taps on axis 1 either contribute zero
(volume sampling: fields decay to zero at the boundary) or clamp to the
edge sample (offset-axis lookups, where samples need not decay).

benchmarks/bench_interp.py times the two paths against each other.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = ["interp2d", "active_backend"]

try:
    import numba

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    numba = None
    _HAS_NUMBA = False


def active_backend() -> str:
    flag = os.environ.get("TENSORRAY_NO_NUMBA", "0").strip().lower()
    if flag not in ("", "0", "false"):
        return "numpy"
    return "numba" if _HAS_NUMBA else "numpy"


def _axis_taps(x: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Stencil base indices and Lagrange weights, shapes (P,) and (P, order)."""
    base = np.floor(x).astype(np.int64) - (order - 1) // 2
    offs = x - base
    w = np.ones((x.shape[0], order))
    for j in range(order):
        for k in range(order):
            if k != j:
                w[:, j] *= (offs - k) / (j - k)
    return base, w


def _interp2d_numpy(u, x0, x1, order0, order1, wrap0, clamp1):
    n0, n1 = u.shape
    base0, w0 = _axis_taps(x0, order0)
    base1, w1 = _axis_taps(x1, order1)
    out = np.zeros(x0.shape[0], dtype=np.complex128)
    for a in range(order0):
        i0 = base0 + a
        if wrap0:
            i0 = i0 % n0
            valid0 = None
        else:
            valid0 = (i0 >= 0) & (i0 < n0)
            i0 = np.clip(i0, 0, n0 - 1)
        for b in range(order1):
            i1 = base1 + b
            valid1 = None if clamp1 else (i1 >= 0) & (i1 < n1)
            i1c = np.clip(i1, 0, n1 - 1)
            w = w0[:, a] * w1[:, b]
            if valid0 is not None:
                w = np.where(valid0, w, 0.0)
            if valid1 is not None:
                w = np.where(valid1, w, 0.0)
            out += w * u[i0, i1c]
    return out


if _HAS_NUMBA:

    @numba.njit(cache=True, parallel=True)
    def _interp2d_numba(u, x0, x1, order0, order1, wrap0, clamp1):  # pragma: no cover
        n0, n1 = u.shape
        npts = x0.shape[0]
        out = np.zeros(npts, dtype=np.complex128)
        h0 = (order0 - 1) // 2
        h1 = (order1 - 1) // 2
        for p in numba.prange(npts):
            b0 = int(np.floor(x0[p])) - h0
            b1 = int(np.floor(x1[p])) - h1
            f0 = x0[p] - b0
            f1 = x1[p] - b1
            w0 = np.empty(order0)
            w1 = np.empty(order1)
            for j in range(order0):
                acc = 1.0
                for k in range(order0):
                    if k != j:
                        acc *= (f0 - k) / (j - k)
                w0[j] = acc
            for j in range(order1):
                acc = 1.0
                for k in range(order1):
                    if k != j:
                        acc *= (f1 - k) / (j - k)
                w1[j] = acc
            val = 0.0 + 0.0j
            for a in range(order0):
                i0 = b0 + a
                if wrap0:
                    i0 = i0 % n0
                elif i0 < 0 or i0 >= n0:
                    continue
                row = u[i0]
                for b in range(order1):
                    i1 = b1 + b
                    if clamp1:
                        if i1 < 0:
                            i1 = 0
                        elif i1 >= n1:
                            i1 = n1 - 1
                        val += w0[a] * w1[b] * row[i1]
                    elif 0 <= i1 < n1:
                        val += w0[a] * w1[b] * row[i1]
            out[p] = val
        return out


def interp2d(
    u: np.ndarray,
    x0: np.ndarray,
    x1: np.ndarray,
    order0: int = 6,
    order1: int = 6,
    wrap0: bool = False,
    clamp1: bool = False,
) -> np.ndarray:
    """Interpolate u at fractional index coordinates (x0, x1).

    u is complex 2-D; x0/x1 are flat float arrays of equal length.  The
    output dtype is complex128 regardless of backend.
    """
    u = np.ascontiguousarray(u, dtype=np.complex128)
    x0 = np.ascontiguousarray(x0, dtype=np.float64)
    x1 = np.ascontiguousarray(x1, dtype=np.float64)
    if x0.shape != x1.shape or x0.ndim != 1:
        raise ValueError("coordinate arrays must be flat and of equal length")
    if active_backend() == "numba":
        return _interp2d_numba(u, x0, x1, order0, order1, wrap0, clamp1)
    return _interp2d_numpy(u, x0, x1, order0, order1, wrap0, clamp1)
