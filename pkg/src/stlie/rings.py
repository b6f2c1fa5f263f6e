"""Finite-dimensional unital associative algebras by structure constants.

An AlgebraSpec fixes a basis r_0..r_{d-1} of R over GF(p) or QQ, with the
multiplication tensor mul[i, j, k] = coefficient of r_k in r_i * r_j.  The
unit must be one of the basis vectors.  On top of that this module computes
the commutator subspace [R, R], the ideals I_m = m*R + R*[R, R] whose
quotients R_m are the value spaces of the second homology of the Steinberg
algebras, and a few stock examples (prime fields, truncated polynomial
rings, full matrix rings, group algebras).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

import numpy as np

from .fields import Field
from .linalg import SolvedBasis, Subspace

__all__ = [
    "AlgebraSpec", "Violation", "validate_algebra", "multiply",
    "commutator_subspace", "ideal_span_closure", "ideal_Im", "quotient_Rm",
    "QuotientAlgebra", "radical", "permute_basis",
    "preset_gf", "preset_poly_quotient", "preset_dual_numbers",
    "preset_matrix", "preset_group_algebra",
    "symmetric_group_table", "cyclic_group_table", "parse_polynomial",
]


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    message: str


@dataclass(frozen=True)
class AlgebraSpec:
    field: Field
    dim: int
    labels: tuple
    unit_index: int
    mul: np.ndarray
    name: str = "R"

    def __post_init__(self):
        object.__setattr__(self, "mul", self.field.array(self.mul))
        self.mul.setflags(write=False)

    def unit_vector(self) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[self.unit_index] = 1
        return v


def multiply(spec: AlgebraSpec, x, y) -> np.ndarray:
    """Coordinate product x * y in R."""
    f = spec.field
    d = spec.dim
    x = f.array(x)
    y = f.array(y)
    t = f.matmul(x.reshape(1, d), spec.mul.reshape(d, d * d)).reshape(d, d)
    return f.matmul(y.reshape(1, d), t).reshape(d)


def validate_algebra(spec: AlgebraSpec) -> list:
    """Return a list of Violation records; empty means the table defines
    a unital associative algebra."""
    out = []
    f = spec.field
    d = spec.dim
    if spec.mul.shape != (d, d, d):
        return [Violation("shape", spec.mul.shape, "mul tensor must be dim^3")]
    if len(spec.labels) != d or len(set(spec.labels)) != d:
        out.append(Violation("labels", (), "labels must be distinct and match dim"))
    if not (0 <= spec.unit_index < d) and d > 0:
        out.append(Violation("unit", (spec.unit_index,), "unit index out of range"))
        return out
    if d == 0:
        return out
    # unit law
    u = spec.unit_index
    ident = f.eye(d)
    if not f.equal(spec.mul[u], ident):
        out.append(Violation("unit", (u,), "left multiplication by the unit is not the identity"))
    if not f.equal(spec.mul[:, u, :], ident):
        out.append(Violation("unit", (u,), "right multiplication by the unit is not the identity"))
    # associativity: (r_a r_b) r_c == r_a (r_b r_c)
    left = f.matmul(spec.mul.reshape(d * d, d), spec.mul.reshape(d, d * d))
    left = left.reshape(d, d, d, d)
    for a in range(d):
        right_a = f.matmul(spec.mul.reshape(d * d, d), spec.mul[a])
        diff = f.reduce(left[a].reshape(d * d, d) - right_a)
        if not f.is_zero(diff):
            bad = np.argwhere(f.reduce(diff) != 0)
            b, c = divmod(int(bad[0][0]), d)
            out.append(Violation(
                "associativity", (a, b, c),
                f"(r{a} r{b}) r{c} != r{a} (r{b} r{c})"))
            break
    return out


def commutator_subspace(spec: AlgebraSpec) -> Subspace:
    """Span of all r_i r_j - r_j r_i."""
    f = spec.field
    d = spec.dim
    vecs = []
    for i in range(d):
        for j in range(i + 1, d):
            vecs.append(f.reduce(spec.mul[i, j] - spec.mul[j, i]))
    if not vecs:
        return Subspace.zero(f, d)
    return Subspace.from_vectors(f, np.array(vecs), ambient=d)


def ideal_span_closure(spec: AlgebraSpec, generators) -> Subspace:
    """Two-sided ideal generated by a set of vectors (iterated closure)."""
    f = spec.field
    d = spec.dim
    span = Subspace.from_vectors(f, generators, ambient=d)
    while True:
        if span.dim == 0:
            return span
        pieces = [span.basis]
        for lam in range(d):
            pieces.append(f.matmul(span.basis, spec.mul[lam]))
            pieces.append(f.matmul(span.basis, spec.mul[:, lam, :]))
        bigger = Subspace.from_vectors(f, np.vstack(pieces), ambient=d)
        if bigger.dim == span.dim:
            return bigger
        span = bigger


@dataclass(frozen=True)
class IdealData:
    modulus: int
    subspace: Subspace


def ideal_Im(spec: AlgebraSpec, m: int) -> IdealData:
    """The ideal I_m = m*R + R*[R, R], certified two-sided."""
    f = spec.field
    d = spec.dim
    comm = commutator_subspace(spec)
    vecs = [f.reduce(m * f.eye(d))]
    for c in comm.basis:
        for lam in range(d):
            # r_lam * c
            vecs.append(multiply(spec, f.eye(d)[lam], c).reshape(1, d))
    span = Subspace.from_vectors(f, np.vstack(vecs), ambient=d)
    # certification: the span is already closed under both multiplications
    if span.dim:
        for lam in range(d):
            left = f.matmul(span.basis, spec.mul[lam])
            right = f.matmul(span.basis, spec.mul[:, lam, :])
            if not (span.contains(left) and span.contains(right)):
                raise ArithmeticError("m*R + R*[R,R] failed to be a two-sided ideal")
    return IdealData(m, span)


@dataclass(frozen=True)
class QuotientAlgebra:
    """R_m = R / I_m with a fixed projection onto coset coordinates."""

    parent: AlgebraSpec
    modulus: int
    ideal: Subspace
    dim: int
    spec: Optional[AlgebraSpec]
    reps: np.ndarray
    projection: np.ndarray  # (dim, parent.dim); coords of v are projection @ v

    def project(self, v) -> np.ndarray:
        f = self.parent.field
        arr = f.array(v)
        single = arr.ndim == 1
        if single:
            arr = arr.reshape(1, -1)
        out = f.matmul(arr, self.projection.T)
        return out[0] if single else out


def quotient_Rm(spec: AlgebraSpec, m: int) -> QuotientAlgebra:
    f = spec.field
    d = spec.dim
    ideal = ideal_Im(spec, m).subspace
    q = d - ideal.dim
    if q == 0:
        return QuotientAlgebra(spec, m, ideal, 0, None,
                               f.zeros((0, d)), f.zeros((0, d)))
    # coset representatives: the class of 1 first, then unit vectors that
    # stay independent mod the ideal
    reps = []
    labels = []
    chosen = [spec.unit_vector()]
    labels.append("1")
    for c in range(d):
        if len(chosen) == q:
            break
        cand = f.zeros(d)
        cand[c] = 1
        trial = Subspace.from_vectors(
            f, np.vstack([ideal.basis, np.array(chosen + [cand])]), ambient=d)
        if trial.dim == ideal.dim + len(chosen) + 1:
            chosen.append(cand)
            labels.append(str(spec.labels[c]))
    reps = np.array([ideal.reduce_mod(v) for v in chosen])
    solver = SolvedBasis(f, np.vstack([ideal.basis, reps]) if ideal.dim else reps)
    projection = solver.coords(f.eye(d))[:, ideal.dim:].T
    mul_q = f.zeros((q, q, q))
    for a in range(q):
        for b in range(q):
            prod = multiply(spec, reps[a], reps[b])
            mul_q[a, b] = solver.coords(prod)[ideal.dim:]
    sub = AlgebraSpec(f, q, tuple(labels), 0, mul_q,
                      name=f"{spec.name}/I{m}")
    bad = validate_algebra(sub)
    if bad:
        raise ArithmeticError(f"quotient algebra failed validation: {bad[0]}")
    return QuotientAlgebra(spec, m, ideal, q, sub, reps, projection)


def radical(m: int) -> int:
    """Product of the distinct primes dividing m."""
    if m < 1:
        raise ValueError("radical is defined for positive integers")
    out = 1
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            out *= p
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        out *= rest
    return out


def permute_basis(spec: AlgebraSpec, perm) -> AlgebraSpec:
    """Re-index the basis along perm (new index i holds old basis perm[i])."""
    perm = list(perm)
    d = spec.dim
    if sorted(perm) != list(range(d)):
        raise ValueError("not a permutation of the basis")
    inv = [0] * d
    for i, p in enumerate(perm):
        inv[p] = i
    mul = spec.mul[np.ix_(perm, perm, perm)]
    labels = tuple(spec.labels[p] for p in perm)
    return AlgebraSpec(spec.field, d, labels, inv[spec.unit_index], mul,
                       name=spec.name)


# ---------------------------------------------------------------------------
# stock algebras


def preset_gf(p: int) -> AlgebraSpec:
    f = Field(p)
    mul = f.zeros((1, 1, 1))
    mul[0, 0, 0] = 1
    return AlgebraSpec(f, 1, ("1",), 0, mul, name=f"gf({p})")


def parse_polynomial(text: str) -> list:
    """Coefficients [c_0, c_1, ...] of a polynomial in x, e.g. 'x^2+x+1'."""
    import re
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    s = s.replace("-", "+-")
    terms = [t for t in s.split("+") if t]
    coeffs: dict[int, int] = {}
    pat = re.compile(r"^(-?)(\d+)?(?:\*?x(?:\^(\d+))?)?$")
    for term in terms:
        mt = pat.match(term)
        if not mt or (mt.group(2) is None and "x" not in term):
            raise ValueError(f"cannot parse polynomial term {term!r}")
        sign = -1 if mt.group(1) else 1
        coef = int(mt.group(2)) if mt.group(2) is not None else 1
        if "x" in term:
            exp = int(mt.group(3)) if mt.group(3) is not None else 1
        else:
            exp = 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def preset_poly_quotient(p: int | Field, f_poly) -> AlgebraSpec:
    """K[x]/(f) for a monic polynomial f over GF(p) (or QQ via a Field)."""
    fld = p if isinstance(p, Field) else Field(p)
    coeffs = parse_polynomial(f_poly) if isinstance(f_poly, str) else list(f_poly)
    coeffs = [fld.scalar(c) for c in coeffs]
    deg = len(coeffs) - 1
    if deg < 1:
        raise ValueError("the modulus polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("the modulus polynomial must be monic")
    d = deg
    # x^deg = -(c_0 + c_1 x + ... + c_{deg-1} x^{deg-1})
    head = fld.reduce(-fld.array(coeffs[:-1]))
    powers = fld.zeros((2 * d, d))
    for i in range(d):
        powers[i, i] = 1
    for i in range(d, 2 * d):
        prev = powers[i - 1]
        shifted = fld.zeros(d)
        shifted[1:] = prev[:-1]
        shifted = fld.reduce(shifted + prev[-1] * head)
        powers[i] = shifted
    mul = fld.zeros((d, d, d))
    for a in range(d):
        for b in range(d):
            mul[a, b] = powers[a + b]
    labels = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(d))
    ftxt = f_poly if isinstance(f_poly, str) else "f"
    base = "q" if fld.is_rational else f"gf({fld.p})"
    return AlgebraSpec(fld, d, labels, 0, mul, name=f"{base}[x]/({ftxt})")


def preset_dual_numbers(p: int | Field) -> AlgebraSpec:
    return preset_poly_quotient(p, "x^2")


def preset_matrix(p: int | Field, k: int) -> AlgebraSpec:
    """Full k x k matrix ring, re-based so the unit is basis vector 0."""
    fld = p if isinstance(p, Field) else Field(p)
    if k < 1:
        raise ValueError("matrix size must be >= 1")
    d = k * k
    mats = [np.eye(k, dtype=np.int64)]
    labels = ["I"]
    for i in range(k):
        for j in range(k):
            if (i, j) == (k - 1, k - 1):
                continue  # e_kk = I - sum of the other diagonal units
            m = np.zeros((k, k), dtype=np.int64)
            m[i, j] = 1
            mats.append(m)
            labels.append(f"e{i + 1}{j + 1}")
    flat = fld.array(np.array([m.reshape(-1) for m in mats]))
    solver = SolvedBasis(fld, flat)
    mul = fld.zeros((d, d, d))
    for a in range(d):
        for b in range(d):
            prod = fld.array(mats[a] @ mats[b]).reshape(-1)
            mul[a, b] = solver.coords(prod)
    base = "q" if fld.is_rational else f"gf({fld.p})"
    return AlgebraSpec(fld, d, tuple(labels), 0, mul, name=f"mat{k}({base})")


def symmetric_group_table(n: int) -> list:
    """Cayley table of S_n on one-line permutations, identity first."""
    from itertools import permutations
    elems = sorted(permutations(range(n)))
    index = {g: i for i, g in enumerate(elems)}
    table = []
    for g in elems:
        row = []
        for h in elems:
            gh = tuple(g[h[i]] for i in range(n))
            row.append(index[gh])
        table.append(row)
    return table


def cyclic_group_table(k: int) -> list:
    return [[(a + b) % k for b in range(k)] for a in range(k)]


def preset_group_algebra(p: int | Field, table, name: str = "g") -> AlgebraSpec:
    """Group algebra K[G] from a Cayley table (table[a][b] = index of ab)."""
    fld = p if isinstance(p, Field) else Field(p)
    d = len(table)
    ident = None
    for e in range(d):
        if all(table[e][x] == x and table[x][e] == x for x in range(d)):
            ident = e
            break
    if ident is None:
        raise ValueError("Cayley table has no identity element")
    mul = fld.zeros((d, d, d))
    for a in range(d):
        if len(table[a]) != d:
            raise ValueError("Cayley table is not square")
        for b in range(d):
            mul[a, b, table[a][b]] = 1
    labels = tuple(f"g{i}" for i in range(d))
    base = "q" if fld.is_rational else f"gf({fld.p})"
    return AlgebraSpec(fld, d, labels, ident, mul, name=f"{base}[{name}]")
