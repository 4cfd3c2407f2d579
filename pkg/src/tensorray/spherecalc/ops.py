"""Covariant calculus of tangential tensor fields on unit spheres.

The covariant derivative acts on the degree-0 homogeneous radial
extension, so the radial term of the ambient formula vanishes and

    nabla_k f_I = (tangential gradient of the component f_I)_k
                  + sum_a y_{i_a} f_{i_1 .. k .. i_m}            (|y| = 1).

All operators keep fields in ambient components; index bookkeeping goes
through small cached tables over sorted multi-indices.  Everything here
is a pure function of the inputs.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .. import symtensor as st
from ..opcalc.ncpoly import D, DELTA, I, J, NCPoly
from .field import TangentField
from .grid import SphereGrid

__all__ = [
    "NablaField",
    "nabla",
    "nabla2",
    "inner_d",
    "divergence",
    "metric_i",
    "trace_j",
    "sphere_integrate",
    "sphere_inner",
    "apply_ncpoly",
    "apply_word_letters",
    "gram_matrix",
]


class NablaField:
    """Rank m+1 tangential field, first index the (non-symmetric) derivative slot.

    Stored as values of shape (n, dim(n, m), N): ambient derivative index
    times the symmetric residual-field components.
    """

    def __init__(self, grid: SphereGrid, m: int, values: np.ndarray):
        self.grid = grid
        self.m = m  # rank of the differentiated field
        self.values = values


@lru_cache(maxsize=None)
def _nabla_alg_table(n: int, m: int):
    """Rows (k, out_pos, y_comp, in_pos) for the algebraic part of nabla."""
    indices, pos, _, _ = st._tables(n, m)
    rows_k, rows_out, rows_y, rows_in = [], [], [], []
    for out_pos, idx in enumerate(indices):
        for a in range(m):
            for k in range(n):
                replaced = tuple(sorted(idx[:a] + (k,) + idx[a + 1 :]))
                rows_k.append(k)
                rows_out.append(out_pos)
                rows_y.append(idx[a])
                rows_in.append(pos[replaced])
    return (
        np.array(rows_k, dtype=np.intp),
        np.array(rows_out, dtype=np.intp),
        np.array(rows_y, dtype=np.intp),
        np.array(rows_in, dtype=np.intp),
    )


@lru_cache(maxsize=None)
def _symmetrize_fold_table(n: int, m_out: int):
    """Rows (out_pos, deriv_comp, in_pos) building sym(nabla f) of rank m_out."""
    indices_out, _, _, _ = st._tables(n, m_out)
    _, pos_in, _, _ = st._tables(n, m_out - 1)
    rows = []
    for out_pos, idx in enumerate(indices_out):
        for a in range(m_out):
            rest = idx[:a] + idx[a + 1 :]
            rows.append((out_pos, idx[a], pos_in[rest]))
    arr = np.array(rows, dtype=np.intp)
    return arr[:, 0], arr[:, 1], arr[:, 2]


@lru_cache(maxsize=None)
def _divergence_fold_table(n: int, m_in: int):
    """Rows (out_pos, p, in_pos) contracting the derivative slot with slot one."""
    indices_out, _, _, _ = st._tables(n, m_in - 1)
    _, pos_in, _, _ = st._tables(n, m_in)
    table = np.empty((len(indices_out), n), dtype=np.intp)
    for out_pos, idx in enumerate(indices_out):
        for p in range(n):
            table[out_pos, p] = pos_in[tuple(sorted((p,) + idx))]
    return table


def nabla_full(grid: SphereGrid, full: np.ndarray) -> np.ndarray:
    """Covariant derivative of a (possibly non-symmetric) tangential field.

    `full` has r tensor axes of extent n plus the trailing node axis; the
    output prepends the derivative axis.  Implements the unit-sphere form

        nabla_k f_I = grad_k f_I + sum_a y_{i_a} f_{i_1 .. k .. i_r}.
    """
    r = full.ndim - 1
    grad = grid.tangential_gradient(full.reshape(-1, grid.num_nodes))
    grad = grad.reshape((grid.n,) + full.shape)
    y = grid.nodes.T
    for a in range(r):
        moved = np.moveaxis(full, a, 0)  # moved[v, rest] = full[.. v at slot a ..]
        term = np.einsum("an,k...n->ka...n", y, moved)
        grad = grad + np.moveaxis(term, 1, a + 1)
    return grad


def nabla(field: TangentField) -> NablaField:
    """Covariant derivative; output tangential in all m+1 indices."""
    grid, m = field.grid, field.m
    grad = grid.tangential_gradient(field.values)  # (n, D, N)
    if m > 0:
        k_arr, out_arr, y_arr, in_arr = _nabla_alg_table(grid.n, m)
        y = grid.nodes.T
        contrib = y[y_arr] * field.values[in_arr]
        n, d_m = grid.n, field.values.shape[0]
        flat = grad.reshape(n * d_m, grid.num_nodes)
        np.add.at(flat, k_arr * d_m + out_arr, contrib)
        grad = flat.reshape(n, d_m, grid.num_nodes)
    return NablaField(grid, m, grad)


def nabla2(field: TangentField) -> np.ndarray:
    """Second covariant derivative nabla(nabla(f)) as full dense arrays.

    Output shape (n, n) + (n,)*m + (N,), index order (k1, k2, i_1..i_m)
    with k1 the outer derivative.  Dense composition is deliberate: this
    is the cross-check target for the explicit second-derivative formula.
    """
    first = nabla_full(field.grid, field.to_dense())
    return nabla_full(field.grid, first)


def inner_d(field: TangentField) -> TangentField:
    """Symmetrized covariant derivative, rank m -> m+1."""
    nf = nabla(field)
    grid, m = field.grid, field.m
    out_rank = m + 1
    out_arr, k_arr, in_arr = _symmetrize_fold_table(grid.n, out_rank)
    d_out = st.dim(grid.n, out_rank)
    result = np.zeros((d_out, grid.num_nodes), dtype=np.complex128)
    np.add.at(result, out_arr, nf.values[k_arr, in_arr])
    result /= out_rank
    return TangentField(grid, out_rank, result)


def divergence(field: TangentField) -> TangentField:
    """Metric trace of the covariant derivative, rank m+1 -> m."""
    if field.m < 1:
        raise ValueError("divergence needs rank >= 1")
    nf = nabla(field)
    table = _divergence_fold_table(field.grid.n, field.m)
    p = np.arange(field.grid.n)
    result = nf.values[p[None, :], table].sum(axis=1)
    return TangentField(field.grid, field.m - 1, result)


def metric_i(field: TangentField) -> TangentField:
    """Symmetric multiplication by the induced metric (projector), m -> m+2."""
    grid, m = field.grid, field.m
    out_rank = m + 2
    out_arr, in_arr, c_arr, d_arr, w_arr = st.pair_table(grid.n, out_rank)
    y = grid.nodes.T
    proj = (c_arr == d_arr).astype(np.float64)[:, None] - y[c_arr] * y[d_arr]
    contrib = (w_arr[:, None] * proj) * field.values[in_arr]
    result = np.zeros((st.dim(grid.n, out_rank), grid.num_nodes), dtype=np.complex128)
    np.add.at(result, out_arr, contrib)
    return TangentField(grid, out_rank, result)


def trace_j(field: TangentField) -> TangentField:
    """Contraction of two indices with the metric, m+2 -> m.

    On tangential fields the ambient Kronecker trace equals the metric
    trace, so the plain trace table applies.
    """
    if field.m < 2:
        raise ValueError("trace needs rank >= 2")
    table = st.trace_table(field.grid.n, field.m)
    return TangentField(field.grid, field.m - 2, field.values[table].sum(axis=1))


def sphere_integrate(grid: SphereGrid, values: np.ndarray) -> complex:
    """Quadrature of a per-node scalar array."""
    return grid.integrate(values)


def sphere_inner(u: TangentField, v: TangentField) -> complex:
    """Weighted L2 pairing sum_nodes w <u, v> with the full index contraction."""
    u._check_like(v)
    _, _, mult, _ = st._tables(u.grid.n, u.m)
    pointwise = np.einsum("d,dk,dk->k", mult, u.values, np.conj(v.values))
    return complex(np.sum(pointwise * u.grid.weights))


_LETTER_FUNCS = {
    I: metric_i,
    J: trace_j,
    D: inner_d,
    DELTA: divergence,
}


def apply_word_letters(letters: tuple[str, ...], field: TangentField) -> TangentField:
    """Apply a word letter by letter, rightmost first."""
    out = field
    for ell in reversed(letters):
        out = _LETTER_FUNCS[ell](out)
    return out


def apply_ncpoly(poly: NCPoly, field: TangentField) -> TangentField:
    """Apply a specialized operator polynomial to a sampled field.

    Radial markers are treated as unit factors: on the unit-sphere samples
    of data living at radius rho, each |y|^2 cancels exactly against the
    1/rho^2 rescaling of the two sphere derivatives it accompanies, so the
    caller never reintroduces rho here.  Suffix applications are memoized
    across words.
    """
    if poly.base_rank != field.m:
        raise ValueError(f"operator expects rank {poly.base_rank}, field has rank {field.m}")
    out_rank = poly.out_rank
    acc = TangentField(
        field.grid,
        out_rank,
        np.zeros((st.dim(field.grid.n, out_rank), field.grid.num_nodes), dtype=np.complex128),
    )
    cache: dict[tuple[str, ...], TangentField] = {(): field}

    def suffix_apply(letters: tuple[str, ...]) -> TangentField:
        if letters in cache:
            return cache[letters]
        tail = suffix_apply(letters[1:])
        result = _LETTER_FUNCS[letters[0]](tail)
        cache[letters] = result
        return result

    for word, coeff in poly.terms.items():
        if coeff.depends_on_n():
            raise ValueError("operator coefficients still symbolic; specialize first")
        value = suffix_apply(word.letters)
        frac: Fraction = coeff.specialize(max(field.grid.n, 2))
        acc = acc + value * complex(frac)
    return acc


def gram_matrix(poly: NCPoly, fields: list[TangentField]) -> np.ndarray:
    """Matrix of pairings <A u_a, u_b> over a list of fields."""
    applied = [apply_ncpoly(poly, u) for u in fields]
    size = len(fields)
    out = np.empty((size, size), dtype=np.complex128)
    for a in range(size):
        for b in range(size):
            out[a, b] = sphere_inner(applied[a], fields[b])
    return out
