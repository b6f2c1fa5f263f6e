"""Exact scalar arithmetic over GF(p) and over the rationals.

A Field instance tags every matrix and tensor in the library.  GF(p) data
lives in int64 arrays with entries normalised to [0, p); rational data lives
in object arrays holding ints and fractions.Fraction values.  All products
are exact: the float64 matmul fast path is only taken when the worst-case
accumulated sum provably fits in the 53-bit mantissa.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

_MANTISSA = 2**53


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """GF(p) for a prime p, or the rationals when p == 0."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if p != 0 and not is_prime(p):
            raise ValueError(f"field characteristic must be 0 or a prime, got {p}")
        if p > 2**31:
            raise ValueError(f"prime {p} exceeds the supported bound 2^31")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def descriptor(self) -> str:
        return "rational" if self.p == 0 else f"gf({self.p})"

    # -- scalars ---------------------------------------------------------

    def scalar(self, x):
        """Canonical form of one scalar (int in [0,p), or Fraction/int)."""
        if self.p:
            return int(x) % self.p
        if isinstance(x, (int, np.integer)):
            return int(x)
        return Fraction(x)

    def inv(self, x):
        if self.p:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, self.p - 2, self.p)
        x = Fraction(x)
        return 1 / x

    # -- arrays ----------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Copy data into a canonical array for this field."""
        if self.p:
            return np.asarray(data, dtype=np.int64) % self.p
        a = np.array(data, dtype=object)
        return a

    def zeros(self, shape) -> np.ndarray:
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        return np.zeros(shape, dtype=object)

    def eye(self, n: int) -> np.ndarray:
        if self.p:
            return np.eye(n, dtype=np.int64)
        return np.eye(n, dtype=np.int64).astype(object)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Normalise an array after ring operations (mod p; no-op over QQ)."""
        if self.p:
            return arr % self.p
        return arr

    def equal(self, a, b) -> bool:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            return False
        if self.p:
            return bool(np.array_equal(a % self.p, b % self.p))
        return bool(np.all(a == b))

    def is_zero(self, arr) -> bool:
        arr = np.asarray(arr)
        if self.p:
            return not np.any(arr % self.p)
        return not np.any(arr != 0)

    # -- exact products --------------------------------------------------

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact a @ b followed by reduction."""
        if self.p == 0:
            return a @ b
        k = a.shape[-1]
        if k == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return np.zeros(shape, dtype=np.int64)
        # float64 is exact while every partial sum stays under 2^53
        if (self.p - 1) ** 2 * k < _MANTISSA:
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return np.rint(prod).astype(np.int64) % self.p
        prod = a.astype(object) @ b.astype(object)
        return (prod % self.p).astype(np.int64)

    def stack_rows(self, mats) -> np.ndarray:
        mats = [m for m in mats if m.shape[0]]
        if not mats:
            raise ValueError("nothing to stack")
        return np.vstack(mats)
