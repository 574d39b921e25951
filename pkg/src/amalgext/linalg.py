"""Exact dense linear algebra over prime fields F_p and the rationals."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class CompositionNonzero(ValueError):
    """Two maps that were required to compose to zero do not."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """F_p for prime p, or Q when the characteristic is 0.

    Matrices are plain numpy arrays: int64 with entries canonically in
    [0, p) for prime characteristic, object arrays of Fraction for Q.
    Every operation is exact and equality is structural; there are no
    tolerances anywhere.
    """

    def __init__(self, characteristic: int):
        if characteristic != 0 and not is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.p = int(characteristic)

    def __repr__(self):
        return "Field(Q)" if self.p == 0 else f"Field(F_{self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    # -- construction -----------------------------------------------------

    def array(self, data) -> np.ndarray:
        if self.p:
            return np.asarray(data, dtype=np.int64) % self.p
        a = np.asarray(data, dtype=object)
        flat = [Fraction(x) for x in a.reshape(-1)]
        out = np.empty(a.shape, dtype=object)
        out.reshape(-1)[:] = flat
        return out

    def zeros(self, *shape) -> np.ndarray:
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.reshape(-1)[:] = [Fraction(0)] * out.size
        return out

    def eye(self, n) -> np.ndarray:
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = self.one
        return m

    @property
    def one(self):
        return np.int64(1) if self.p else Fraction(1)

    # -- arithmetic --------------------------------------------------------

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.p else a

    def matmul(self, a, b) -> np.ndarray:
        return self.reduce(a @ b)

    def add(self, a, b) -> np.ndarray:
        return self.reduce(a + b)

    def sub(self, a, b) -> np.ndarray:
        return self.reduce(a - b)

    def neg(self, a) -> np.ndarray:
        return self.reduce(-a)

    def scale(self, c, a) -> np.ndarray:
        return self.reduce(c * a)

    def inv_scalar(self, x):
        if self.p:
            return np.int64(pow(int(x), -1, self.p))
        return Fraction(1) / x

    # -- elimination ---------------------------------------------------

    def rref(self, a) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and the (strictly increasing) pivot columns.

        Pivot choice is deterministic: first nonzero entry scanning
        top-to-bottom within each column, columns left-to-right.
        """
        r = self.array(a).copy()
        m, n = r.shape
        pivots: list[int] = []
        row = 0
        for col in range(n):
            piv = None
            for i in range(row, m):
                if r[i, col] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != row:
                r[[row, piv]] = r[[piv, row]]
            r[row] = self.reduce(r[row] * self.inv_scalar(r[row, col]))
            coeffs = r[:, col].copy()
            coeffs[row] = 0
            r = self.reduce(r - np.outer(coeffs, r[row]))
            pivots.append(col)
            row += 1
            if row == m:
                break
        return r, pivots

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel_basis(self, a) -> list[np.ndarray]:
        """Basis of {x : a @ x = 0}, one vector per free column, deterministic."""
        a = self.array(a)
        m, n = a.shape
        r, pivots = self.rref(a)
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for fc in free:
            v = self.zeros(n)
            v[fc] = self.one
            for i, pc in enumerate(pivots):
                v[pc] = self.reduce(-r[i, fc])
            basis.append(v)
        return basis

    def kernel_matrix(self, a) -> np.ndarray:
        basis = self.kernel_basis(a)
        n = np.asarray(a).shape[1]
        if not basis:
            return self.zeros(n, 0)
        return np.column_stack(basis)

    def solve(self, a, b):
        """First RREF back-substitution solution of a @ x = b, or None."""
        a = self.array(a)
        b = self.array(b)
        aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
        r, pivots = self.rref(aug)
        n = a.shape[1]
        if n in pivots:
            return None
        x = self.zeros(n)
        for i, pc in enumerate(pivots):
            x[pc] = r[i, n]
        return x

    def in_column_span(self, a, v) -> bool:
        a = self.array(a)
        v = self.array(v).reshape(-1, 1)
        return self.rank(np.concatenate([a, v], axis=1)) == self.rank(a)

    def columns_contained(self, a, b) -> bool:
        """True iff every column of b lies in the column span of a."""
        a = self.array(a)
        b = self.array(b)
        if b.shape[1] == 0:
            return True
        return self.rank(np.concatenate([a, b], axis=1)) == self.rank(a)

    def random_matrix(self, rng, m, n) -> np.ndarray:
        if self.p:
            return np.asarray(rng.integers(0, self.p, size=(m, n)), dtype=np.int64)
        return self.array(rng.integers(-5, 6, size=(m, n)))

    def random_invertible(self, rng, n) -> np.ndarray:
        while True:
            m = self.random_matrix(rng, n, n)
            if self.rank(m) == n:
                return m


def subquotient_dim(field: Field, boundary_in, boundary_out) -> int:
    """dim ker(boundary_out) - rank(boundary_in) for a two-step complex.

    boundary_in maps into the middle space, boundary_out maps out of it;
    their composite must vanish.
    """
    boundary_in = field.array(boundary_in)
    boundary_out = field.array(boundary_out)
    comp = field.matmul(boundary_out, boundary_in)
    if np.any(comp != 0):
        raise CompositionNonzero("boundary_out o boundary_in != 0")
    mid = boundary_out.shape[1]
    return (mid - field.rank(boundary_out)) - field.rank(boundary_in)
