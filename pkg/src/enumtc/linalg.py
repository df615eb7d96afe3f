"""Exact dense linear algebra over the coefficient fields.

Plain Gaussian elimination with first-nonzero pivoting; every field here
is exact, so there is no conditioning to worry about, and the matrices
stay small enough that cubic elimination is fine.
"""

from __future__ import annotations

from .errors import InvalidInput
from .fields import field_inverse


class Matrix:
    """Row-major exact matrix over one declared field."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries, field):
        if len(entries) != rows * cols:
            raise InvalidInput("entry count does not match dimensions")
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)
        self.field = field

    @classmethod
    def from_rows(cls, row_lists, field, cols: int = None):
        rows = len(row_lists)
        if rows == 0:
            if cols is None:
                raise InvalidInput("empty matrix needs an explicit width")
            return cls(0, cols, [], field)
        width = len(row_lists[0])
        if any(len(r) != width for r in row_lists):
            raise InvalidInput("ragged rows")
        flat = [e for r in row_lists for e in r]
        return cls(rows, width, flat, field)

    @classmethod
    def identity(cls, n: int, field):
        ents = [field.one() if i == j else field.zero()
                for i in range(n) for j in range(n)]
        return cls(n, n, ents, field)

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_lists(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        ents = [self.at(i, j) for j in range(self.cols)
                for i in range(self.rows)]
        return Matrix(self.cols, self.rows, ents, self.field)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise InvalidInput("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = self.field.zero()
            for j in range(self.cols):
                e = self.at(i, j)
                if e:
                    acc = acc + e * v[j]
            out.append(acc)
        return out

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise InvalidInput("dimension mismatch")
        ents = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = self.field.zero()
                for k in range(self.cols):
                    a = self.at(i, k)
                    if a:
                        acc = acc + a * other.at(k, j)
                ents.append(acc)
        return Matrix(self.rows, other.cols, ents, self.field)

    def rref(self):
        """Reduced row echelon form and the list of pivot columns."""
        M = [self.row(i) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if M[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            M[r], M[pivot_row] = M[pivot_row], M[r]
            inv = field_inverse(M[r][c])
            M[r] = [inv * e for e in M[r]]
            for i in range(self.rows):
                if i != r and M[i][c]:
                    factor = M[i][c]
                    M[i] = [a - factor * b for a, b in zip(M[i], M[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        flat = [e for row in M for e in row]
        return Matrix(self.rows, self.cols, flat, self.field), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right null space, one vector per free column."""
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        zero, one = self.field.zero(), self.field.one()
        for fc in free:
            v = [zero] * self.cols
            v[fc] = one
            for r_i, pc in enumerate(pivots):
                v[pc] = -R.at(r_i, fc)
            basis.append(v)
        return basis


def row_space_rank(vectors, field, width: int = None) -> int:
    if not vectors:
        return 0
    return Matrix.from_rows(vectors, field, cols=width).rank()


def row_span_contains(vectors, v, field) -> bool:
    """True when v lies in the row span of vectors."""
    base = row_space_rank(vectors, field, width=len(v))
    aug = row_space_rank(list(vectors) + [list(v)], field, width=len(v))
    return aug == base
