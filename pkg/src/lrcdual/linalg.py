"""Dense linear algebra over GF(q) on integer-encoded numpy arrays.

Column indices returned by :func:`rref` are 0-based numpy positions;
:func:`support` reports 1-based coordinates, matching the usual
``{1, ..., n}`` coordinate convention for codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf import FieldError, FieldSpec


@dataclass(frozen=True, eq=False)
class Matrix:
    field: FieldSpec
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise FieldError(f"matrix entries must lie in [0, {self.field.q})")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field is other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field.q, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix(GF({self.field.q}), {self.tolist()})"

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.data.T)

    T = property(transpose)

    def __matmul__(self, other: Matrix) -> Matrix:
        return matmul(self, other)


def _same_field(a: Matrix, b: Matrix) -> FieldSpec:
    if a.field is not b.field:
        raise FieldError(f"cannot mix GF({a.field.q}) and GF({b.field.q})")
    return a.field


def matmul(a: Matrix, b: Matrix) -> Matrix:
    F = _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    out = np.zeros((a.rows, b.cols), dtype=np.int64)
    for t in range(a.cols):
        # outer product of column t of a with row t of b, accumulated in GF(q)
        term = F.mul_table[a.data[:, t][:, None], b.data[t][None, :]]
        out = F.add_table[out, term]
    return Matrix(F, out)


def _rref_array(F: FieldSpec, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = np.array(arr, dtype=np.int64, copy=True)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = F.mul_table[F.inv_table[A[r, c]], A[r]]
        for i in range(rows):
            if i != r and A[i, c]:
                factor = F.neg_table[A[i, c]]
                A[i] = F.add_table[A[i], F.mul_table[factor, A[r]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, plus pivot columns."""
    if M.rows == 0:
        return Matrix(M.field, np.zeros((0, M.cols), dtype=np.int64)), []
    R, pivots = _rref_array(M.field, M.data)
    return Matrix(M.field, R.reshape(len(pivots), M.cols)), pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> Matrix:
    """Rows span ``{v : M v^T = 0}``; one row per non-pivot column."""
    F = M.field
    R, pivots = rref(M)
    n = M.cols
    free = [c for c in range(n) if c not in set(pivots)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        K[row, f] = 1
        for i, pc in enumerate(pivots):
            K[row, pc] = F.neg_table[R.data[i, f]]
    return Matrix(F, K)


def row_space_equal(a: Matrix, b: Matrix) -> bool:
    _same_field(a, b)
    return a.cols == b.cols and rref(a)[0] == rref(b)[0]


def in_row_space(M: Matrix, v: Sequence[int]) -> bool:
    stacked = Matrix(M.field, np.vstack([M.data, np.asarray(v, dtype=np.int64)[None, :]]))
    return rank(stacked) == rank(M)


def weight(v: Sequence[int]) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def support(v: Sequence[int]) -> frozenset[int]:
    return frozenset(int(i) + 1 for i in np.nonzero(np.asarray(v))[0])


def dependent_row(M: Matrix) -> int | None:
    """0-based index of the first row lying in the span of the rows before it."""
    for i in range(M.rows):
        if rank(Matrix(M.field, M.data[: i + 1])) < i + 1:
            return i
    return None
