"""Dense algebra of symmetric tensors on R^n.

A rank-m symmetric tensor is stored as one complex value per sorted
multi-index (0-based, non-decreasing tuples), comb(n+m-1, m) values in
total.  Reads through arbitrary index tuples resolve to the sorted
representative, so full symmetry holds by construction.

All values are immutable after construction and every operation is a pure
function, so tensors can be shared freely between workers.

Index tables (sorted-index lists, multiplicities, pair tables) are cached
per (n, m); symmetrization enumerates the n**m raw index tuples instead of
the m! permutations, which is cheaper at the ranks used here (m <= 8, the
documented cap).
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

__all__ = [
    "MAX_RANK",
    "SymTensor",
    "dim",
    "symmetrize",
    "kron_mult_i",
    "contract_j",
    "dot",
    "power_eval",
    "delta_power",
    "eps_power",
    "c_contract_oracle",
    "ij_apply",
]

#: ranks above this are refused; permutation/raw-tuple enumeration is only
#: budgeted for desk scale
MAX_RANK = 12


def dim(n: int, m: int) -> int:
    """Number of independent components of a rank-m symmetric tensor on R^n."""
    if n < 1 or m < 0:
        raise ValueError(f"invalid (n, m) = ({n}, {m})")
    return math.comb(n + m - 1, m)


@lru_cache(maxsize=None)
def _tables(n: int, m: int):
    """Sorted index list, position map and multiplicities for (n, m)."""
    if m > MAX_RANK:
        raise ValueError(f"rank {m} exceeds the supported cap {MAX_RANK}")
    indices = list(itertools.combinations_with_replacement(range(n), m))
    pos = {idx: i for i, idx in enumerate(indices)}
    mult = np.empty(len(indices), dtype=np.float64)
    for i, idx in enumerate(indices):
        c = math.factorial(m)
        for _, group in itertools.groupby(idx):
            c //= math.factorial(sum(1 for _ in group))
        mult[i] = c
    idx_array = np.array(indices, dtype=np.intp).reshape(len(indices), m)
    return indices, pos, mult, idx_array


@lru_cache(maxsize=None)
def _raw2pos(n: int, m: int) -> np.ndarray:
    """Map raw base-n encoded index tuples to sorted positions."""
    _, pos, _, _ = _tables(n, m)
    if m == 0:
        return np.zeros(1, dtype=np.intp)
    raw = np.indices((n,) * m).reshape(m, -1).T
    raw_sorted = np.sort(raw, axis=1)
    out = np.empty(raw.shape[0], dtype=np.intp)
    for i, row in enumerate(raw_sorted):
        out[i] = pos[tuple(row)]
    return out


@lru_cache(maxsize=None)
def pair_table(n: int, m_out: int):
    """Table implementing symmetrized multiplication by a rank-2 tensor.

    For every sorted output index K of rank m_out the symmetrization
    sym(B_{i1 i2} f_{i3..}) equals
        1/(m_out*(m_out-1)) * sum over ordered slot pairs (a, b), a != b,
        of B[K_a, K_b] * f[K minus slots a, b].
    Returns arrays (out_pos, in_pos, c, d, weight) with duplicates merged;
    B is looked up at (c, d).
    """
    if m_out < 2:
        raise ValueError("pair table needs rank >= 2")
    indices_out, _, _, _ = _tables(n, m_out)
    _, pos_in, _, _ = _tables(n, m_out - 2)
    acc: dict[tuple[int, int, int, int], float] = {}
    w = 1.0 / (m_out * (m_out - 1))
    for o, K in enumerate(indices_out):
        for a in range(m_out):
            for b in range(m_out):
                if a == b:
                    continue
                rest = tuple(K[t] for t in range(m_out) if t != a and t != b)
                key = (o, pos_in[rest], K[a], K[b])
                acc[key] = acc.get(key, 0.0) + w
    items = sorted(acc.items())
    out_pos = np.array([k[0] for k, _ in items], dtype=np.intp)
    in_pos = np.array([k[1] for k, _ in items], dtype=np.intp)
    c = np.array([k[2] for k, _ in items], dtype=np.intp)
    d = np.array([k[3] for k, _ in items], dtype=np.intp)
    weight = np.array([v for _, v in items], dtype=np.float64)
    return out_pos, in_pos, c, d, weight


@lru_cache(maxsize=None)
def trace_table(n: int, m_in: int) -> np.ndarray:
    """Positions of (p, p) + I in rank m_in, shape (dim(n, m_in-2), n)."""
    if m_in < 2:
        raise ValueError("trace needs rank >= 2")
    indices_out, _, _, _ = _tables(n, m_in - 2)
    _, pos_in, _, _ = _tables(n, m_in)
    table = np.empty((len(indices_out), n), dtype=np.intp)
    for o, I in enumerate(indices_out):
        for p in range(n):
            table[o, p] = pos_in[tuple(sorted((p, p) + I))]
    return table


class SymTensor:
    """Immutable dense symmetric tensor of rank m on R^n."""

    __slots__ = ("n", "m", "comps")

    def __init__(self, n: int, m: int, comps: np.ndarray):
        if n < 1 or m < 0:
            raise ValueError(f"invalid (n, m) = ({n}, {m})")
        comps = np.asarray(comps, dtype=np.complex128)
        if comps.shape != (dim(n, m),):
            raise ValueError(
                f"expected {dim(n, m)} components for (n={n}, m={m}), got shape {comps.shape}"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "comps", comps)
        comps.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("SymTensor is immutable")

    @classmethod
    def zeros(cls, n: int, m: int) -> "SymTensor":
        return cls(n, m, np.zeros(dim(n, m), dtype=np.complex128))

    @classmethod
    def scalar(cls, n: int, value: complex) -> "SymTensor":
        return cls(n, 0, np.array([value], dtype=np.complex128))

    @classmethod
    def basis_vector(cls, n: int, axis: int) -> "SymTensor":
        comps = np.zeros(n, dtype=np.complex128)
        comps[axis] = 1.0
        return cls(n, 1, comps)

    @classmethod
    def random(cls, n: int, m: int, rng: np.random.Generator, complex_values: bool = True) -> "SymTensor":
        data = rng.standard_normal(dim(n, m))
        if complex_values:
            data = data + 1j * rng.standard_normal(dim(n, m))
        return cls(n, m, data)

    def __getitem__(self, idx) -> complex:
        if self.m == 0:
            if idx not in ((), None):
                raise IndexError("rank-0 tensor takes the empty index ()")
            return complex(self.comps[0])
        if isinstance(idx, int):
            idx = (idx,)
        key = tuple(sorted(idx))
        if len(key) != self.m:
            raise IndexError(f"need {self.m} indices, got {len(key)}")
        _, pos, _, _ = _tables(self.n, self.m)
        try:
            return complex(self.comps[pos[key]])
        except KeyError:
            raise IndexError(f"index {idx} out of range for n={self.n}") from None

    def indices(self) -> list[tuple[int, ...]]:
        """Sorted multi-indices aligned with `comps`."""
        return list(_tables(self.n, self.m)[0])

    def to_dense(self) -> np.ndarray:
        """Full ndarray with m axes of extent n."""
        if self.m == 0:
            return self.comps.reshape(())
        return self.comps[_raw2pos(self.n, self.m)].reshape((self.n,) * self.m)

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._check_like(other)
        return SymTensor(self.n, self.m, self.comps + other.comps)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        self._check_like(other)
        return SymTensor(self.n, self.m, self.comps - other.comps)

    def __mul__(self, scalar: complex) -> "SymTensor":
        return SymTensor(self.n, self.m, self.comps * scalar)

    __rmul__ = __mul__

    def _check_like(self, other: "SymTensor") -> None:
        if not isinstance(other, SymTensor):
            raise TypeError("expected a SymTensor")
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError(f"shape mismatch: ({self.n},{self.m}) vs ({other.n},{other.m})")

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.comps))) if self.comps.size else 0.0

    def to_report_dict(self) -> dict:
        """Serialization used inside report documents (1-based index keys)."""
        indices, _, _, _ = _tables(self.n, self.m)
        comps = {
            ",".join(str(i + 1) for i in idx): [float(v.real), float(v.imag)]
            for idx, v in zip(indices, self.comps)
        }
        return {"n": self.n, "m": self.m, "components": comps}

    def __repr__(self) -> str:
        return f"SymTensor(n={self.n}, m={self.m}, {dim(self.n, self.m)} comps)"


def symmetrize(arr: np.ndarray, n: int | None = None) -> SymTensor:
    """Average a full rank-m array over all index permutations.

    Idempotent on symmetric input.  The average is accumulated over raw
    index tuples (n**m of them) rather than the m! permutations.
    """
    arr = np.asarray(arr, dtype=np.complex128)
    m = arr.ndim
    if m == 0:
        return SymTensor(n if n is not None else 1, 0, arr.reshape(1))
    if len(set(arr.shape)) != 1:
        raise ValueError(f"expected equal axis extents, got shape {arr.shape}")
    n = arr.shape[0]
    r2p = _raw2pos(n, m)
    _, _, mult, _ = _tables(n, m)
    flat = arr.reshape(-1)
    d = dim(n, m)
    acc = np.bincount(r2p, weights=flat.real, minlength=d) + 1j * np.bincount(
        r2p, weights=flat.imag, minlength=d
    )
    return SymTensor(n, m, acc / mult)


def kron_mult_i(f: SymTensor) -> SymTensor:
    """Symmetric multiplication by the Kronecker tensor: rank m -> m+2."""
    m_out = f.m + 2
    out_pos, in_pos, c, d, w = pair_table(f.n, m_out)
    sel = c == d
    comps = np.zeros(dim(f.n, m_out), dtype=np.complex128)
    np.add.at(comps, out_pos[sel], w[sel] * f.comps[in_pos[sel]])
    return SymTensor(f.n, m_out, comps)


def contract_j(f: SymTensor) -> SymTensor:
    """Trace over two slots (slot choice immaterial by symmetry): rank m -> m-2."""
    if f.m < 2:
        raise ValueError(f"contract_j needs rank >= 2, got {f.m}")
    table = trace_table(f.n, f.m)
    return SymTensor(f.n, f.m - 2, f.comps[table].sum(axis=1))


def dot(f: SymTensor, g: SymTensor) -> complex:
    """Full contraction sum_I f_I conj(g_I) over all n^m index tuples."""
    f._check_like(g)
    _, _, mult, _ = _tables(f.n, f.m)
    return complex(np.sum(mult * f.comps * np.conj(g.comps)))


def power_eval(f: SymTensor, v: np.ndarray) -> complex:
    """Contract every slot with the vector v: f_{i1..im} v^{i1} ... v^{im}."""
    v = np.asarray(v)
    if v.shape != (f.n,):
        raise ValueError(f"vector has shape {v.shape}, expected ({f.n},)")
    if f.m == 0:
        return complex(f.comps[0])
    _, _, mult, idx_array = _tables(f.n, f.m)
    mono = np.prod(v[idx_array], axis=1)
    return complex(np.sum(mult * f.comps * mono))


def delta_power(n: int, mk: int) -> SymTensor:
    """Symmetrized mk-fold power of the Kronecker tensor (rank 2*mk)."""
    if mk < 0:
        raise ValueError("power must be >= 0")
    t = SymTensor.scalar(n, 1.0)
    for _ in range(mk):
        t = kron_mult_i(t)
    return t


def eps_power(y: np.ndarray, mk: int) -> SymTensor:
    """Symmetrized mk-fold power of the projector delta - y y^T / |y|^2."""
    y = np.asarray(y, dtype=np.float64)
    ny = float(np.dot(y, y))
    if ny == 0.0:
        raise ValueError("y must be nonzero")
    if mk < 0:
        raise ValueError("power must be >= 0")
    n = y.shape[0]
    if mk == 0:
        return SymTensor.scalar(n, 1.0)
    p = np.eye(n) - np.outer(y, y) / ny
    full = p
    for _ in range(mk - 1):
        full = np.multiply.outer(full, p)
    return symmetrize(full)


def c_contract_oracle(g: SymTensor, h: SymTensor) -> complex:
    """Contract the symmetrized Kronecker power against g and conj(h).

    g has rank m+2k and h rank m; the Kronecker power delta^(m+k) of rank
    2m+2k is contracted with all indices of g and all of conj(h).  This is
    the brute-force route, independent of the i/j expansion it is used to
    check.
    """
    if g.n != h.n:
        raise ValueError("dimension mismatch")
    m = h.m
    if (g.m - m) % 2 != 0:
        raise ValueError(f"rank mismatch: g rank {g.m}, h rank {m}")
    k2 = g.m - m
    mk = m + k2 // 2
    if mk < 0:
        raise ValueError("m + k must be >= 0")
    pos_matrix = _oracle_positions(g.n, g.m, h.m)
    dp = delta_power(g.n, mk)
    _, _, mult_g, _ = _tables(g.n, g.m)
    _, _, mult_h, _ = _tables(h.n, h.m)
    gv = mult_g * g.comps
    hv = mult_h * np.conj(h.comps)
    return complex(gv @ dp.comps[pos_matrix] @ hv)


@lru_cache(maxsize=None)
def _oracle_positions(n: int, mg: int, mh: int) -> np.ndarray:
    idx_g, _, _, _ = _tables(n, mg)
    idx_h, _, _, _ = _tables(n, mh)
    _, pos_full, _, _ = _tables(n, mg + mh)
    out = np.empty((len(idx_g), len(idx_h)), dtype=np.intp)
    for a, I in enumerate(idx_g):
        for b, J in enumerate(idx_h):
            out[a, b] = pos_full[tuple(sorted(I + J))]
    return out


def ij_apply(f: SymTensor, num_i: int, num_j: int) -> SymTensor:
    """Apply i^num_i j^num_j to f (contractions first, then multiplications).

    Returns the zero tensor of the appropriate rank when a contraction
    hits rank < 2, matching the convention that such words act as zero.
    """
    if num_i < 0 or num_j < 0:
        raise ValueError("word powers must be >= 0")
    t = f
    for _ in range(num_j):
        if t.m < 2:
            return SymTensor.zeros(f.n, f.m - 2 * num_j + 2 * num_i)
        t = contract_j(t)
    for _ in range(num_i):
        t = kron_mult_i(t)
    return t
