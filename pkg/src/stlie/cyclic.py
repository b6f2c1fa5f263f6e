"""First cyclic homology of an associative algebra.

HC_1 is read off the first-quadrant bicomplex whose column q holds the
tensor powers R^(q+1), with Hochschild b on even columns, -b' on odd
columns, and horizontal maps 1 - t (odd -> even) and the norm N
(even -> odd), where t cyclically permutes tensor factors with sign
(-1)^q.  Only total degrees <= 2 are needed:

    Tot_2 = R^(3) + R^(2) + R   --D2-->   Tot_1 = R^(2) + R   --D1-->   R

and HC_1 = nullity(D1) - rank(D2).  Everything is exact over GF(p) or QQ.

For commutative algebras in characteristic zero HC_1 agrees with
Kahler differentials modulo exact forms, which kahler_hc1_char0 computes
independently from the presentation of Omega^1 by the Leibniz relations.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .rings import AlgebraSpec
from .linalg import rank

__all__ = [
    "hochschild_b", "hochschild_b_prime", "cyclic_t", "norm_N",
    "total_d1", "total_d2", "hc1_dim", "kahler_hc1_char0",
]


def _tuple_index(tup, d: int) -> int:
    idx = 0
    for a in tup:
        idx = idx * d + a
    return idx


def _boundary(spec: AlgebraSpec, q: int, include_wrap: bool) -> np.ndarray:
    """Matrix of b (or b' when include_wrap is false): R^(q+1) -> R^(q)."""
    f = spec.field
    d = spec.dim
    M = f.zeros((d ** q, d ** (q + 1)))
    for tup in product(range(d), repeat=q + 1):
        col = _tuple_index(tup, d)
        for i in range(q):
            sign = 1 if i % 2 == 0 else -1
            coeffs = spec.mul[tup[i], tup[i + 1]]
            rest = tup[:i] + (0,) + tup[i + 2:]
            for l in range(d):
                if coeffs[l] == 0:
                    continue
                tgt = _tuple_index(rest[:i] + (l,) + rest[i + 1:], d)
                M[tgt, col] += sign * coeffs[l]
        if include_wrap:
            sign = 1 if q % 2 == 0 else -1
            coeffs = spec.mul[tup[q], tup[0]]
            for l in range(d):
                if coeffs[l] == 0:
                    continue
                tgt = _tuple_index((l,) + tup[1:q], d)
                M[tgt, col] += sign * coeffs[l]
    return f.reduce(M)


def hochschild_b(spec: AlgebraSpec, q: int) -> np.ndarray:
    return _boundary(spec, q, include_wrap=True)


def hochschild_b_prime(spec: AlgebraSpec, q: int) -> np.ndarray:
    return _boundary(spec, q, include_wrap=False)


def cyclic_t(spec: AlgebraSpec, q: int) -> np.ndarray:
    """Signed cyclic shift on R^(q+1): a_q to the front, sign (-1)^q."""
    f = spec.field
    d = spec.dim
    M = f.zeros((d ** (q + 1), d ** (q + 1)))
    sign = 1 if q % 2 == 0 else -1
    for tup in product(range(d), repeat=q + 1):
        col = _tuple_index(tup, d)
        row = _tuple_index((tup[q],) + tup[:q], d)
        M[row, col] = sign
    return f.reduce(M)


def norm_N(spec: AlgebraSpec, q: int) -> np.ndarray:
    f = spec.field
    d = spec.dim
    t = cyclic_t(spec, q)
    acc = f.eye(d ** (q + 1))
    power = f.eye(d ** (q + 1))
    for _ in range(q):
        power = f.matmul(power, t)
        acc = f.reduce(acc + power)
    return acc


def total_d1(spec: AlgebraSpec) -> np.ndarray:
    """Tot_1 = R^(2) + R -> Tot_0 = R; the R summand maps by 1 - t_0 = 0."""
    f = spec.field
    d = spec.dim
    M = f.zeros((d, d * d + d))
    M[:, :d * d] = hochschild_b(spec, 1)
    return M


def total_d2(spec: AlgebraSpec) -> np.ndarray:
    """Tot_2 = R^(3) + R^(2) + R -> Tot_1 = R^(2) + R (block matrix)."""
    f = spec.field
    d = spec.dim
    d3, d2 = d ** 3, d ** 2
    M = f.zeros((d2 + d, d3 + d2 + d))
    M[:d2, :d3] = hochschild_b(spec, 2)
    one_minus_t = f.reduce(f.eye(d2) - cyclic_t(spec, 1))
    M[:d2, d3:d3 + d2] = one_minus_t
    M[d2:, d3:d3 + d2] = f.reduce(-hochschild_b_prime(spec, 1))
    M[d2:, d3 + d2:] = norm_N(spec, 0)
    return M


def hc1_dim(spec: AlgebraSpec) -> int:
    """dim HC_1(R), with the complex property checked along the way."""
    f = spec.field
    d1 = total_d1(spec)
    d2 = total_d2(spec)
    comp = f.matmul(d1, d2)
    if not f.is_zero(comp):
        raise ArithmeticError("total differentials do not compose to zero")
    nullity = d1.shape[1] - rank(d1, f)
    return nullity - rank(d2, f)


def kahler_hc1_char0(spec: AlgebraSpec) -> int:
    """dim of Omega^1 / dR for a commutative algebra over QQ.

    Omega^1 is presented on generators dr_0..dr_{m-1} as the free module
    R^m modulo the submodule generated by the Leibniz defects
    d(r_i r_j) - r_i dr_j - r_j dr_i; flat coordinates are (generator,
    coefficient) pairs.
    """
    f = spec.field
    if not f.is_rational:
        raise ValueError("the Kahler comparison is only valid over the rationals")
    d = spec.dim
    for i in range(d):
        for j in range(i + 1, d):
            if not f.equal(spec.mul[i, j], spec.mul[j, i]):
                raise ValueError("the Kahler comparison needs a commutative algebra")
    m = d
    rels = []
    for i in range(m):
        for j in range(m):
            v = f.zeros(m * m)
            for l in range(m):
                v[l * m + spec.unit_index] += spec.mul[i, j, l]
            v[j * m + i] -= 1
            v[i * m + j] -= 1
            rels.append(v)
    # close the relation span into a submodule: multiply by every basis vector
    closed = []
    for v in rels:
        for k in range(m):
            w = f.zeros(m * m)
            for g in range(m):
                coeff = v[g * m:(g + 1) * m]
                w[g * m:(g + 1) * m] = f.matmul(coeff.reshape(1, m), spec.mul[k]).reshape(m)
            closed.append(w)
    exact = []
    for i in range(m):
        v = f.zeros(m * m)
        v[i * m + spec.unit_index] = 1
        exact.append(v)
    stacked = np.vstack([np.array(closed + exact, dtype=object)])
    return m * m - rank(stacked, f)
