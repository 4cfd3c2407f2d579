"""Tangential symmetric tensor fields sampled on sphere grids.

Values are stored in ambient Cartesian components: one complex array of
shape (dim(n, m), N) per field, rows indexed by sorted multi-indices.
Each stored row is a scalar function on the sphere, which is what makes
the grid's spectral derivative machinery applicable componentwise.
"""
from __future__ import annotations

import numpy as np

from .. import symtensor as st
from .grid import SphereGrid, circle_grid, sphere_grid

__all__ = [
    "TangentField",
    "tangential_project",
    "coordinate_field",
    "harmonic_scalar",
    "parallel_circle_field",
    "metric_field",
    "random_tangential",
]


class TangentField:
    """Sampled tangential symmetric tensor field on a sphere grid."""

    def __init__(self, grid: SphereGrid, m: int, values: np.ndarray):
        values = np.asarray(values, dtype=np.complex128)
        expected = (st.dim(grid.n, m), grid.num_nodes)
        if values.shape != expected:
            raise ValueError(f"values shape {values.shape}, expected {expected}")
        self.grid = grid
        self.m = m
        self.values = values

    # ---- algebra ----------------------------------------------------------
    def _check_like(self, other: "TangentField") -> None:
        if self.grid is not other.grid or self.m != other.m:
            raise ValueError("fields live on different grids or ranks")

    def __add__(self, other: "TangentField") -> "TangentField":
        self._check_like(other)
        return TangentField(self.grid, self.m, self.values + other.values)

    def __sub__(self, other: "TangentField") -> "TangentField":
        self._check_like(other)
        return TangentField(self.grid, self.m, self.values - other.values)

    def __mul__(self, scalar) -> "TangentField":
        return TangentField(self.grid, self.m, self.values * scalar)

    __rmul__ = __mul__

    # ---- structure -----------------------------------------------------------
    def to_dense(self) -> np.ndarray:
        """Full per-node arrays, shape (n,)*m + (N,)."""
        n, m = self.grid.n, self.m
        if m == 0:
            return self.values[0]
        r2p = st._raw2pos(n, m)
        return self.values[r2p].reshape((n,) * m + (self.grid.num_nodes,))

    @classmethod
    def from_dense(cls, grid: SphereGrid, full: np.ndarray) -> "TangentField":
        """Build from full per-node arrays; input must already be symmetric."""
        m = full.ndim - 1
        if m == 0:
            return cls(grid, 0, np.asarray(full)[None, :])
        idx_array = st._tables(grid.n, m)[3]
        rows = [full[tuple(idx)] for idx in idx_array]
        return cls(grid, m, np.stack(rows))

    def at_node(self, node_index: int) -> st.SymTensor:
        return st.SymTensor(self.grid.n, self.m, self.values[:, node_index].copy())

    def tangential_residual(self) -> float:
        """Max contraction with the node vector, relative to the field scale."""
        if self.m == 0:
            return 0.0
        full = self.to_dense()
        y = self.grid.nodes.T  # (n, N)
        contracted = np.einsum("i...k,ik->...k", full, y)
        scale = np.max(np.abs(self.values))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(contracted)) / scale)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def __repr__(self) -> str:
        return f"TangentField(n={self.grid.n}, m={self.m}, nodes={self.grid.num_nodes})"

    # ---- snapshots -------------------------------------------------------------
    def to_snapshot(self) -> str:
        """Columnar text dump (node coordinates, weight, components)."""
        lines = self.grid.snapshot_header()
        lines[0] += f" rank={self.m}"
        idx_names = [
            "c" + "".join(str(i + 1) for i in idx)
            for idx in st._tables(self.grid.n, self.m)[0]
        ]
        lines[1] += " " + " ".join(f"{s}.re {s}.im" for s in idx_names)
        for a in range(self.grid.num_nodes):
            row = list(self.grid.nodes[a]) + [self.grid.weights[a]]
            for d in range(self.values.shape[0]):
                row += [self.values[d, a].real, self.values[d, a].imag]
            lines.append(" ".join(f"{v:+.16e}" for v in row))
        return "\n".join(lines) + "\n"


def tangential_project(field: TangentField) -> TangentField:
    """Project every index onto the tangent space of the node.

    Idempotent; the output contracts to zero with the node vector in every
    slot, up to rounding.
    """
    if field.m == 0:
        return TangentField(field.grid, 0, field.values.copy())
    full = field.to_dense()
    y = field.grid.nodes.T  # (n, N)
    for axis in range(field.m):
        moved = np.moveaxis(full, axis, 0)
        contracted = np.einsum("jk,j...k->...k", y, moved)
        moved = moved - y[(slice(None),) + (None,) * (field.m - 1) + (slice(None),)] * contracted[None]
        full = np.moveaxis(moved, 0, axis)
    return TangentField.from_dense(field.grid, full)


# ---- analytic test fields ------------------------------------------------------


def coordinate_field(grid: SphereGrid, axis: int) -> TangentField:
    """Scalar restriction of the coordinate function y_axis."""
    return TangentField(grid, 0, grid.nodes[:, axis].astype(np.complex128)[None, :])


def harmonic_scalar(grid: SphereGrid, degree: int) -> TangentField:
    """Restriction of a fixed degree-l harmonic polynomial (l <= 3)."""
    y = grid.nodes.T
    if grid.n == 2:
        z = y[0] + 1j * y[1]
        vals = (z**degree).real if degree else np.ones(grid.num_nodes)
    else:
        if degree == 0:
            vals = np.ones(grid.num_nodes)
        elif degree == 1:
            vals = y[0]
        elif degree == 2:
            vals = y[0] * y[1]
        elif degree == 3:
            vals = y[0] * y[1] * y[2]
        else:
            raise ValueError("harmonic fixtures cover degree <= 3 for n = 3")
    return TangentField(grid, 0, np.asarray(vals, dtype=np.complex128)[None, :])


def parallel_circle_field(grid: SphereGrid) -> TangentField:
    """The unit tangent field (-y2, y1) on the circle (covariantly constant)."""
    if grid.n != 2:
        raise ValueError("parallel field fixture is a circle construction")
    vals = np.stack([-grid.nodes[:, 1], grid.nodes[:, 0]]).astype(np.complex128)
    return TangentField(grid, 1, vals)


def metric_field(grid: SphereGrid) -> TangentField:
    """Per-node induced metric delta - y y^T as a rank-2 tangential field."""
    y = grid.nodes.T
    n = grid.n
    full = np.zeros((n, n, grid.num_nodes), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            full[i, j] = (1.0 if i == j else 0.0) - y[i] * y[j]
    return TangentField.from_dense(grid, full)


def random_tangential(
    grid: SphereGrid,
    m: int,
    rng: np.random.Generator,
    degree: int = 4,
    complex_values: bool = True,
) -> TangentField:
    """Random band-limited tangential field: polynomial components, projected.

    Components are random polynomials in the ambient coordinates of total
    degree <= degree, so every derivative taken by the spectral machinery
    is exact for these fields.
    """
    y = grid.nodes.T
    num_comps = st.dim(grid.n, m)
    monomials = [np.ones(grid.num_nodes)]
    for _ in range(degree):
        monomials = monomials + [mon * y[i] for mon in monomials[-grid.n :] for i in range(grid.n)]
    basis = np.stack(monomials[: 1 + grid.n * degree + degree**2])  # modest subset
    coeffs = rng.standard_normal((num_comps, basis.shape[0]))
    if complex_values:
        coeffs = coeffs + 1j * rng.standard_normal(coeffs.shape)
    values = coeffs @ basis
    field = TangentField(grid, m, values)
    return tangential_project(field)
