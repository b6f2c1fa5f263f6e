"""Second homology and universal central extensions of Lie algebras.

With trivial coefficients the relevant piece of the Chevalley-Eilenberg
complex is

    Lambda^3 g  --d3-->  Lambda^2 g  --d2-->  g,
    d2(x ^ y) = [x, y],
    d3(x ^ y ^ z) = [x, y] ^ z + [y, z] ^ x + [z, x] ^ y,

so dim H_2 = nullity(d2) - rank(d3).  For a perfect g the carrier
Lambda^2 g / im d3 with bracket <u> , <v> |-> <d2(u) ^ d2(v)> is the
universal central extension; uce() builds it with explicit structure
constants and certifies the construction (boundary condition, bracket
well-definedness, Jacobi, centrality of the kernel, perfectness).

Triples are enumerated lexicographically and d3 is assembled by scatter
adds; over GF(2) the rows are built directly in bit-packed form.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .fields import Field
from .linalg import (Quotient, Subspace, gf2_rank_packed, gf2_rref_packed,
                     nullspace, rank, rref)
from .lie import LieAlgebraData, bracket_rows, is_perfect, validate_lie

__all__ = [
    "wedge_pairs", "wedge_expand_rows", "d2_matrix", "d3_rows",
    "h2_dim", "is_centrally_closed", "UceData", "uce",
]


def wedge_pairs(d: int):
    """Index arrays I, J (i < j) and the (d, d) pair -> flat lookup."""
    I, J = np.triu_indices(d, 1)
    lookup = np.full((d, d), -1, dtype=np.int64)
    lookup[I, J] = np.arange(I.size)
    lookup[J, I] = np.arange(I.size)
    return I, J, lookup


def wedge_expand_rows(field: Field, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise x ^ y in wedge coordinates: (N, d) x (N, d) -> (N, d(d-1)/2)."""
    X = field.array(X)
    Y = field.array(Y)
    n, d = X.shape
    I, J, _ = wedge_pairs(d)
    out = field.zeros((n, I.size))
    step = max(1, 2_000_000 // max(1, d * d))
    for s in range(0, n, step):
        xa = X[s:s + step]
        ya = Y[s:s + step]
        outer = xa[:, :, None] * ya[:, None, :]
        out[s:s + step] = field.reduce(outer[:, I, J] - outer[:, J, I])
    return out


def d2_matrix(L: LieAlgebraData) -> np.ndarray:
    """(dim g, P) matrix of the bracket on wedge coordinates (column action)."""
    I, J, _ = wedge_pairs(L.dim)
    return L.bracket[I, J, :].T.copy()


def _d3_scatter_indices(L: LieAlgebraData, triples: np.ndarray, spin: tuple):
    """Nonzero contributions of the cyclic term [x_a, x_b] ^ x_c."""
    a, b, c = spin
    _, _, lookup = wedge_pairs(L.dim)
    coeff = L.bracket[triples[:, a], triples[:, b], :]
    rows, ls = np.nonzero(coeff)
    vals = coeff[rows, ls]
    ks = triples[rows, c]
    keep = ls != ks
    rows, ls, ks, vals = rows[keep], ls[keep], ks[keep], vals[keep]
    sgn = np.where(ls < ks, 1, -1)
    cols = lookup[np.minimum(ls, ks), np.maximum(ls, ks)]
    return rows, cols, vals, sgn


_SPINS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def d3_rows(L: LieAlgebraData) -> np.ndarray:
    """Dense (T, P) matrix whose rows are d3 of the lexicographic 3-subsets."""
    d = L.dim
    f = L.field
    triples = np.array(list(combinations(range(d), 3)), dtype=np.int64).reshape(-1, 3)
    P = d * (d - 1) // 2
    M = f.zeros((triples.shape[0], P))
    for spin in _SPINS:
        rows, cols, vals, sgn = _d3_scatter_indices(L, triples, spin)
        np.add.at(M, (rows, cols), vals * sgn)
    return f.reduce(M)


def _d3_rows_packed_gf2(L: LieAlgebraData):
    """(T, words) bit-packed d3 rows over GF(2); returns (data, ncols)."""
    d = L.dim
    triples = np.array(list(combinations(range(d), 3)), dtype=np.int64).reshape(-1, 3)
    P = d * (d - 1) // 2
    words = max(1, (P + 63) // 64)
    data = np.zeros((triples.shape[0], words), dtype=np.uint64)
    for spin in _SPINS:
        rows, cols, vals, _ = _d3_scatter_indices(L, triples, spin)
        odd = (vals % 2).astype(bool)
        rows, cols = rows[odd], cols[odd]
        np.bitwise_xor.at(
            data, (rows, cols >> 6),
            np.uint64(1) << (cols & 63).astype(np.uint64))
    return data, P


def h2_dim(L: LieAlgebraData) -> int:
    """dim H_2(g; K) = nullity(d2) - rank(d3), by exact elimination."""
    d = L.dim
    f = L.field
    P = d * (d - 1) // 2
    if P == 0:
        return 0
    rank_d2 = rank(d2_matrix(L), f)
    if d < 3:
        rank_d3 = 0
    elif f.p == 2:
        data, ncols = _d3_rows_packed_gf2(L)
        rank_d3 = gf2_rank_packed(data, ncols)
    else:
        rank_d3 = rank(d3_rows(L), f)
    return (P - rank_d2) - rank_d3


def is_centrally_closed(L: LieAlgebraData) -> bool:
    return is_perfect(L) and h2_dim(L) == 0


@dataclass(frozen=True)
class UceData:
    """Universal central extension with explicit structure constants.

    carrier basis vector alpha is the class of the wedge pair rep_pairs[alpha];
    delta (dim g, dim carrier) is the covering map; kernel is ker delta in
    carrier coordinates and equals H_2(g).
    """

    base: LieAlgebraData
    lie: LieAlgebraData
    quotient: Quotient
    delta: np.ndarray
    rep_pairs: tuple
    kernel: Subspace

    @property
    def dim(self) -> int:
        return self.lie.dim

    @property
    def kernel_dim(self) -> int:
        return self.kernel.dim

    def project(self, vecs) -> np.ndarray:
        f = self.base.field
        arr = f.array(vecs)
        single = arr.ndim == 1
        if single:
            arr = arr.reshape(1, -1)
        out = f.matmul(arr, self.delta.T)
        return out[0] if single else out


def _im_d3(L: LieAlgebraData) -> Subspace:
    f = L.field
    d = L.dim
    P = d * (d - 1) // 2
    if d < 3:
        return Subspace.zero(f, P)
    if f.p == 2:
        data, ncols = _d3_rows_packed_gf2(L)
        rr = gf2_rref_packed(data, ncols)
        return Subspace(f, P, rr.matrix, rr.pivots)
    rows = d3_rows(L)
    rr = rref(rows, f)
    k = len(rr.pivots)
    return Subspace(f, P, rr.matrix[:k].copy(), rr.pivots)


def uce(L: LieAlgebraData, rng: np.random.Generator | None = None,
        witnesses: int = 20) -> UceData:
    """Universal central extension of a perfect Lie algebra."""
    f = L.field
    d = L.dim
    if not is_perfect(L):
        raise ValueError("the universal central extension needs a perfect algebra")
    if rng is None:
        rng = np.random.default_rng(0)
    I, J, _ = wedge_pairs(d)
    P = I.size
    im = _im_d3(L)
    d2 = d2_matrix(L)
    # boundary condition: im d3 inside ker d2
    if im.dim and not f.is_zero(f.matmul(d2, im.basis.T)):
        raise ArithmeticError("im d3 is not contained in ker d2")
    quot = Quotient(im)
    q = quot.dim
    rep_pairs = tuple((int(I[c]), int(J[c])) for c in quot.rep_cols)
    delta = d2[:, list(quot.rep_cols)].copy()
    # structure constants: bracket of classes via wedges of delta columns
    lifted = delta.T  # row alpha = d2 of carrier basis vector alpha
    ii, jj = np.triu_indices(q, 1)
    wedges = wedge_expand_rows(f, lifted[ii], lifted[jj])
    coords = quot.coords(wedges)
    c = f.zeros((q, q, q))
    c[ii, jj] = coords
    c[jj, ii] = f.reduce(-coords)
    carrier = LieAlgebraData(f, q, tuple(f"w{a}" for a in range(q)), c,
                             name=f"uce({L.name})")
    bad = validate_lie(carrier)
    if bad:
        raise ArithmeticError(f"carrier bracket fails: {bad[0]}")
    # delta is a Lie homomorphism onto g
    lhs = f.matmul(c.reshape(q * q, q), delta.T)
    rhs = bracket_rows(L, np.repeat(lifted, q, axis=0), np.tile(lifted, (q, 1)))
    if not f.is_zero(f.reduce(lhs - rhs)):
        raise ArithmeticError("the covering map is not a Lie homomorphism")
    if rank(delta, f) != rank(d2, f):
        raise ArithmeticError("the covering map is not surjective")
    # kernel is central and has the homology dimension
    kernel = nullspace(delta, f)
    if kernel.dim:
        flat = f.matmul(kernel.basis, c.reshape(q, q * q))
        if not f.is_zero(flat):
            raise ArithmeticError("ker delta is not central")
    if kernel.dim != h2_dim(L):
        raise ArithmeticError("kernel dimension disagrees with H_2")
    if not is_perfect(carrier):
        raise ArithmeticError("the covering of a perfect algebra must be perfect")
    # spot-check well-definedness: changing a representative by im d3 does
    # not move the bracket
    if im.dim:
        for _ in range(witnesses):
            w = f.array(rng.integers(0, max(2, f.p or 7), size=im.dim))
            v = f.array(rng.integers(0, max(2, f.p or 7), size=P))
            wvec = f.matmul(w.reshape(1, -1), im.basis).reshape(P)
            dw = f.matmul(d2, wvec.reshape(P, 1)).reshape(d)
            dv = f.matmul(d2, v.reshape(P, 1)).reshape(d)
            wedge = wedge_expand_rows(f, dw.reshape(1, d), dv.reshape(1, d))
            if not f.is_zero(quot.coords(wedge)):
                raise ArithmeticError("bracket depends on the chosen representative")
    return UceData(L, carrier, quot, delta, rep_pairs, kernel)
