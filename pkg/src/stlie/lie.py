"""Finite-dimensional Lie algebras over GF(p) or QQ by structure constants.

LieAlgebraData stores the full bracket tensor c[i, j, k] (coefficient of
b_k in [b_i, b_j]), kept alternating by construction.  gl_n(R) and sl_n(R)
are built from an associative AlgebraSpec; sl_n(R) is the subalgebra
generated by the off-diagonal e_ij(a), certified to coincide with the
matrices whose trace lies in [R, R].  Its basis is kept addressable: the
generators e_ij(r_lambda) are basis vectors, followed by diagonal
differences e_ii(r) - e_nn(r) and commutator-valued e_nn(c).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Field
from .linalg import Quotient, SolvedBasis, Subspace, nullspace
from .rings import AlgebraSpec, Violation, commutator_subspace

__all__ = [
    "LieAlgebraData", "validate_lie", "bracket_vec", "bracket_rows",
    "derived_subalgebra", "center", "is_perfect",
    "GlAlgebra", "SlAlgebra", "build_gl", "build_sl",
]

_MANTISSA = 2**53


@dataclass(frozen=True)
class LieAlgebraData:
    field: Field
    dim: int
    labels: tuple
    bracket: np.ndarray
    name: str = "L"

    def __post_init__(self):
        object.__setattr__(self, "bracket", self.field.array(self.bracket))
        self.bracket.setflags(write=False)

    @classmethod
    def from_pairs(cls, field: Field, labels, pairs: dict, name: str = "L") -> "LieAlgebraData":
        """Build from brackets given on index pairs i < j (alternating fill)."""
        d = len(labels)
        c = field.zeros((d, d, d))
        for (i, j), v in pairs.items():
            if not 0 <= i < j < d:
                raise ValueError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
            c[i, j] = field.array(v)
            c[j, i] = field.reduce(-c[i, j])
        return cls(field, d, tuple(labels), c, name=name)


def validate_lie(L: LieAlgebraData, jacobi: bool = True) -> list:
    """Alternating + Jacobi checks; returns a list of violations."""
    f = L.field
    d = L.dim
    c = L.bracket
    out = []
    if c.shape != (d, d, d):
        return [Violation("shape", c.shape, "bracket tensor must be dim^3")]
    for i in range(d):
        if not f.is_zero(c[i, i]):
            out.append(Violation("alternating", (i, i), f"[b{i}, b{i}] != 0"))
            break
    skew = f.reduce(c + c.transpose(1, 0, 2))
    if not f.is_zero(skew):
        bad = np.argwhere(skew != 0)[0]
        out.append(Violation("alternating", tuple(int(x) for x in bad[:2]),
                             "bracket is not antisymmetric"))
    if not jacobi or d == 0 or out:
        return out
    c2 = c.reshape(d * d, d)
    cflat = c.reshape(d, d * d)
    block = max(1, 4_000_000 // max(1, d ** 3))
    for k0 in range(0, d, block):
        k1 = min(d, k0 + block)
        nb = k1 - k0
        t1 = f.matmul(c2, c[:, k0:k1, :].reshape(d, nb * d))
        t1 = t1.reshape(d, d, nb, d)
        t2 = f.matmul(c[:, k0:k1, :].reshape(d * nb, d), cflat)
        t2 = t2.reshape(d, nb, d, d).transpose(2, 0, 1, 3)  # (i, j, k, m)
        t3 = f.matmul(c[k0:k1].reshape(nb * d, d), cflat)
        t3 = t3.reshape(nb, d, d, d).transpose(1, 2, 0, 3)
        total = f.reduce(t1 + t2 + t3)
        if not f.is_zero(total):
            bad = np.argwhere(total != 0)[0]
            i, j, k = int(bad[0]), int(bad[1]), int(bad[2]) + k0
            out.append(Violation("jacobi", (i, j, k),
                                 f"Jacobi fails on basis triple ({i}, {j}, {k})"))
            return out
    return out


def bracket_vec(L: LieAlgebraData, x, y) -> np.ndarray:
    f = L.field
    d = L.dim
    x = f.array(x)
    y = f.array(y)
    t = f.matmul(x.reshape(1, d), L.bracket.reshape(d, d * d)).reshape(d, d)
    return f.matmul(y.reshape(1, d), t).reshape(d)


def bracket_rows(L: LieAlgebraData, X, Y) -> np.ndarray:
    """Pairwise brackets of two equal-length batches of coordinate rows."""
    f = L.field
    d = L.dim
    X = f.array(X)
    Y = f.array(Y)
    n = X.shape[0]
    if n == 0:
        return f.zeros((0, d))
    t = f.matmul(X, L.bracket.reshape(d, d * d)).reshape(n, d, d)
    if f.p and (f.p - 1) ** 2 * d < _MANTISSA:
        out = np.einsum("nj,njk->nk", Y.astype(np.float64), t.astype(np.float64))
        return np.rint(out).astype(np.int64) % f.p
    out = f.zeros((n, d))
    for i in range(n):
        out[i] = f.matmul(Y[i].reshape(1, d), t[i]).reshape(d)
    return out


def derived_subalgebra(L: LieAlgebraData) -> Subspace:
    return Subspace.from_vectors(L.field, L.bracket.reshape(L.dim * L.dim, L.dim),
                                 ambient=L.dim)


def is_perfect(L: LieAlgebraData) -> bool:
    return derived_subalgebra(L).dim == L.dim


def center(L: LieAlgebraData) -> Subspace:
    d = L.dim
    m = L.bracket.transpose(1, 2, 0).reshape(d * d, d)
    return nullspace(m, L.field)


# ---------------------------------------------------------------------------
# matrix Lie algebras over an associative algebra


def _mat_bracket_batch(R: AlgebraSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """[X_a, Y_a] for batches of matrix elements shaped (N, n, n, m)."""
    f = R.field
    N, n = X.shape[0], X.shape[1]
    m = R.dim
    if N == 0:
        return f.zeros((0, n, n, m))
    if f.p and (f.p - 1) ** 3 * (n * m * m) < _MANTISSA:
        mulf = R.mul.astype(np.float64)
        Xf = X.astype(np.float64)
        Yf = Y.astype(np.float64)
        prod = np.einsum("nikl,nkjm,lmv->nijv", Xf, Yf, mulf)
        prod -= np.einsum("nikl,nkjm,lmv->nijv", Yf, Xf, mulf)
        return np.rint(prod).astype(np.int64) % f.p
    out = f.zeros((N, n, n, m))
    for a in range(N):
        for i in range(n):
            for j in range(n):
                acc = f.zeros(m)
                for k in range(n):
                    xy = f.matmul(f.matmul(X[a, i, k].reshape(1, m),
                                           R.mul.reshape(m, m * m)).reshape(m, m).T,
                                  Y[a, k, j].reshape(m, 1)).reshape(m)
                    yx = f.matmul(f.matmul(Y[a, i, k].reshape(1, m),
                                           R.mul.reshape(m, m * m)).reshape(m, m).T,
                                  X[a, k, j].reshape(m, 1)).reshape(m)
                    acc = acc + xy - yx
                out[a, i, j] = f.reduce(acc)
    return out


@dataclass(frozen=True)
class GlAlgebra:
    ring: AlgebraSpec
    n: int
    lie: LieAlgebraData

    def index(self, i: int, j: int, lam: int) -> int:
        return (i * self.n + j) * self.ring.dim + lam

    def element(self, i: int, j: int, coeffs) -> np.ndarray:
        f = self.ring.field
        v = f.zeros(self.lie.dim)
        coeffs = f.array(coeffs)
        m = self.ring.dim
        v[(i * self.n + j) * m:(i * self.n + j + 1) * m] = coeffs
        return v


def build_gl(R: AlgebraSpec, n: int, validate: bool = True) -> GlAlgebra:
    """gl_n(R) with basis e_ij(r_lambda) in lexicographic (i, j, lambda) order."""
    if n < 2:
        raise ValueError("need n >= 2")
    f = R.field
    m = R.dim
    d = n * n * m
    c = f.zeros((n, n, m, n, n, m, n, n, m))
    mul_t = np.swapaxes(R.mul, 0, 1)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                # [e_ij(a), e_jl(b)] contributes e_il(ab)
                c[i, j, :, j, l, :, i, l, :] += R.mul
            for k in range(n):
                # [e_ij(a), e_ki(b)] contributes -e_kj(ba)
                c[i, j, :, k, i, :, k, j, :] -= mul_t
    c = f.reduce(c.reshape(d, d, d))
    labels = tuple(f"e{i + 1}{j + 1}({R.labels[lam]})"
                   for i in range(n) for j in range(n) for lam in range(m))
    lie = LieAlgebraData(f, d, labels, c, name=f"gl{n}({R.name})")
    if validate:
        bad = validate_lie(lie)
        if bad:
            raise ArithmeticError(f"gl failed validation: {bad[0]}")
    return GlAlgebra(R, n, lie)


@dataclass(frozen=True)
class SlAlgebra:
    ring: AlgebraSpec
    n: int
    lie: LieAlgebraData
    basis_mats: np.ndarray       # (dim, n, n, m) matrix form of each basis vector
    solver: SolvedBasis          # coordinates in flattened gl coordinates
    gen_offset: dict             # (i, j) -> first basis index of e_ij(r_*)
    num_gen: int                 # count of off-diagonal basis vectors

    def element(self, i: int, j: int, coeffs) -> np.ndarray:
        """Coordinates of e_ij(a) for off-diagonal (i, j)."""
        if i == j:
            raise ValueError("generators are off-diagonal")
        f = self.ring.field
        v = f.zeros(self.lie.dim)
        base = self.gen_offset[(i, j)]
        v[base:base + self.ring.dim] = f.array(coeffs)
        return v

    def matrix_form(self, v) -> np.ndarray:
        f = self.ring.field
        arr = f.array(v)
        flat = f.matmul(arr.reshape(1, -1),
                        self.basis_mats.reshape(self.lie.dim, -1))
        return flat.reshape(self.n, self.n, self.ring.dim)


def _closure_from_generators(R: AlgebraSpec, n: int, gen_flat: np.ndarray) -> Subspace:
    f = R.field
    span = Subspace.from_vectors(f, gen_flat)
    m = R.dim
    while True:
        k = span.dim
        mats = span.basis.reshape(k, n, n, m)
        ii, jj = np.triu_indices(k, 1)
        br = _mat_bracket_batch(R, mats[ii], mats[jj]).reshape(len(ii), -1)
        bigger = Subspace.from_vectors(f, np.vstack([span.basis, br]))
        if bigger.dim == span.dim:
            return bigger
        span = bigger


def build_sl(R: AlgebraSpec, n: int, validate: bool = True) -> SlAlgebra:
    """sl_n(R): basis e_ij(r), then e_ii(r) - e_nn(r), then e_nn([R,R])."""
    if n < 2:
        raise ValueError("need n >= 2")
    f = R.field
    m = R.dim
    comm = commutator_subspace(R)
    mats = []
    labels = []
    gen_offset = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            gen_offset[(i, j)] = len(mats)
            for lam in range(m):
                g = f.zeros((n, n, m))
                g[i, j, lam] = 1
                mats.append(g)
                labels.append(f"e{i + 1}{j + 1}({R.labels[lam]})")
    num_gen = len(mats)
    for i in range(n - 1):
        for lam in range(m):
            g = f.zeros((n, n, m))
            g[i, i, lam] = 1
            g[n - 1, n - 1, lam] -= 1
            mats.append(f.reduce(g))
            labels.append(f"h{i + 1}({R.labels[lam]})")
    for row in comm.basis:
        g = f.zeros((n, n, m))
        g[n - 1, n - 1] = row
        mats.append(g)
        labels.append(f"z{len(mats) - num_gen - (n - 1) * m}")
    basis_mats = np.array(mats) if f.p else np.array(mats, dtype=object)
    d = len(mats)
    expected = n * n * m - m + comm.dim
    if d != expected:
        raise ArithmeticError("sl basis has the wrong cardinality")
    flat = basis_mats.reshape(d, n * n * m)
    solver = SolvedBasis(f, flat)  # raises if dependent
    declared = Subspace.from_vectors(f, flat)

    # certification 1: the declared span is the closure of the generators
    generated = _closure_from_generators(R, n, flat[:num_gen])
    if generated != declared:
        raise ArithmeticError("span of iterated brackets differs from the declared sl basis")

    # certification 2: the declared span is {X : tr(X) in [R, R]}
    trace = f.zeros((m, n * n * m))
    for i in range(n):
        for lam in range(m):
            trace[lam, (i * n + i) * m + lam] = 1
    comm_quot = Quotient(comm)
    qmat = comm_quot.coords(f.eye(m)).T  # (m - dim [R,R], m) acting on columns
    cond = f.reduce(f.matmul(qmat, trace))
    traced = nullspace(cond, f)
    if traced != declared:
        raise ArithmeticError("trace characterisation differs from the declared sl basis")

    # structure constants on the named basis
    ii, jj = np.triu_indices(d, 1)
    br = _mat_bracket_batch(R, basis_mats[ii], basis_mats[jj]).reshape(len(ii), -1)
    coords = solver.coords(br)
    c = f.zeros((d, d, d))
    c[ii, jj] = coords
    c[jj, ii] = f.reduce(-coords)
    lie = LieAlgebraData(f, d, tuple(labels), c, name=f"sl{n}({R.name})")
    if validate:
        bad = validate_lie(lie)
        if bad:
            raise ArithmeticError(f"sl failed validation: {bad[0]}")
    return SlAlgebra(R, n, lie, basis_mats, solver, gen_offset, num_gen)
