"""The discrete line manifold for n = 2 and sampled functions on it.

A line is (x, xi) with |xi| = 1 and <x, xi> = 0.  For n = 2 the direction
grid is the uniform circle grid and the offset is the single coordinate p
along eta(theta) = (-sin, cos), i.e. x = p eta(theta).  Offsets sit on the
uniform grid p_j = -P + j dp, dp = 2P/count (j = 0 .. count-1).

Sampled functions carry the homogeneity degree m of their canonical
extension psi(x, xi) = |xi|^m phi(x - <x,xi> xi/|xi|^2, xi/|xi|), which
the line-space Laplacian machinery needs.

Parity: reversing the direction maps (x, xi) -> (x, -xi), which is the
grid map (i, j) -> (i + N/2, count - j), and multiplies values by (-1)^m.
"""
from __future__ import annotations

import numpy as np

from ..spherecalc.grid import SphereGrid, circle_grid

__all__ = ["LineGrid", "RaySample"]


class LineGrid:
    """Direction circle plus a uniform transverse offset grid (n = 2)."""

    def __init__(self, directions: SphereGrid, offset_extent: float, offset_count: int):
        if directions.n != 2:
            raise ValueError("the line manifold machinery supports n = 2")
        if directions.num_nodes % 4 != 0:
            raise ValueError("direction count must be a multiple of 4")
        if offset_count % 2 != 0:
            raise ValueError("offset count must be even")
        self.directions = directions
        self.offset_extent = float(offset_extent)
        self.offset_count = int(offset_count)

    @classmethod
    def build(cls, num_directions: int = 512, offset_extent: float = 12.0, offset_count: int = 512):
        return cls(circle_grid(num_directions), offset_extent, offset_count)

    @property
    def num_directions(self) -> int:
        return self.directions.num_nodes

    @property
    def offset_step(self) -> float:
        return 2.0 * self.offset_extent / self.offset_count

    def offsets(self) -> np.ndarray:
        return -self.offset_extent + self.offset_step * np.arange(self.offset_count)

    def thetas(self) -> np.ndarray:
        return self.directions._meta["theta"]

    def xi(self) -> np.ndarray:
        """Directions, shape (2, num_directions)."""
        return self.directions.nodes.T

    def eta(self) -> np.ndarray:
        """Offset axes (rotated directions), shape (2, num_directions)."""
        return self.directions._meta["eta"]

    def dual(self) -> "LineGrid":
        """Grid carrying the per-direction transform of the offset axis."""
        dq = 2.0 * np.pi / (self.offset_count * self.offset_step)
        return LineGrid(self.directions, dq * self.offset_count / 2.0, self.offset_count)

    def is_compatible(self, other: "LineGrid") -> bool:
        return (
            self.directions is other.directions
            and self.offset_count == other.offset_count
            and abs(self.offset_extent - other.offset_extent) < 1e-12
        )

    def __repr__(self) -> str:
        return (
            f"LineGrid(directions={self.num_directions}, offsets={self.offset_count}, "
            f"extent={self.offset_extent:.4g})"
        )


class RaySample:
    """Complex samples on a line grid with a declared homogeneity degree."""

    def __init__(self, grid: LineGrid, values: np.ndarray, degree: int):
        values = np.asarray(values, dtype=np.complex128)
        expected = (grid.num_directions, grid.offset_count)
        if values.shape != expected:
            raise ValueError(f"values shape {values.shape}, expected {expected}")
        self.grid = grid
        self.values = values
        self.degree = int(degree)

    def _check_like(self, other: "RaySample") -> None:
        if not self.grid.is_compatible(other.grid):
            raise ValueError("samples live on different line grids")

    def __add__(self, other: "RaySample") -> "RaySample":
        self._check_like(other)
        return RaySample(self.grid, self.values + other.values, self.degree)

    def __sub__(self, other: "RaySample") -> "RaySample":
        self._check_like(other)
        return RaySample(self.grid, self.values - other.values, self.degree)

    def __mul__(self, scalar) -> "RaySample":
        return RaySample(self.grid, self.values * scalar, self.degree)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def parity_residual(self) -> float:
        """Deviation from values(x, -xi) = (-1)^m values(x, xi).

        The offset row j = 0 has no grid partner under p -> -p and is
        excluded.
        """
        nd = self.grid.num_directions
        flipped = np.roll(self.values, -nd // 2, axis=0)[:, ::-1]
        # p-reversal maps j -> count - j; slicing off j = 0 aligns the rest
        lhs = self.values[:, 1:]
        rhs = (-1.0) ** self.degree * flipped[:, :-1]
        scale = max(self.max_abs(), 1e-300)
        return float(np.max(np.abs(lhs - rhs)) / scale)

    def l2_inner(self, other: "RaySample") -> complex:
        """Line-manifold L2 pairing: directions x offsets quadrature."""
        self._check_like(other)
        w_theta = self.grid.directions.weights
        dp = self.grid.offset_step
        return complex(np.sum(w_theta[:, None] * self.values * np.conj(other.values)) * dp)

    def __repr__(self) -> str:
        return f"RaySample(degree={self.degree}, grid={self.grid!r})"
