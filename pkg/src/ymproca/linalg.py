"""Exact dense linear algebra over Gaussian rationals.

Sizes here are small (at most 2^n blade coordinates with n <= 16, and in
practice <= 64), so plain Gauss-Jordan elimination with exact pivots is
both fast enough and free of conditioning questions.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import QQi, as_scalar


class SingularMatrixError(ValueError):
    pass


class InconsistentSystemError(ValueError):
    pass


Matrix = list[list[QQi]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[as_scalar(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = _copy(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = QQi(1) / m[row][col]
        m[row] = [inv * x for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[QQi]:
    """Solve A x = b exactly.

    Works for rectangular A; free variables are set to zero.  Raises
    InconsistentSystemError when no solution exists.
    """
    a = _copy(rows)
    b = [as_scalar(x) for x in rhs]
    if len(a) != len(b):
        raise ValueError("matrix/vector size mismatch")
    ncols = len(a[0]) if a else 0
    aug = [row + [val] for row, val in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        raise InconsistentSystemError("linear system has no solution")
    x = [QQi(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = red[r][ncols]
    return x


def invert(rows: Sequence[Sequence]) -> Matrix:
    """Exact inverse of a square matrix; raises SingularMatrixError."""
    a = _copy(rows)
    d = len(a)
    if any(len(row) != d for row in a):
        raise ValueError("matrix is not square")
    aug = [row + [QQi(1 if i == j else 0) for j in range(d)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if len(pivots) < d or pivots[:d] != list(range(d)):
        raise SingularMatrixError("matrix is singular")
    return [row[d:] for row in red[:d]]


def nullspace(rows: Sequence[Sequence]) -> list[list[QQi]]:
    """Basis of the exact kernel of A (one vector per free column)."""
    red, pivots = rref(rows)
    ncols = len(red[0]) if red else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [QQi(0)] * ncols
        v[fc] = QQi(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis
