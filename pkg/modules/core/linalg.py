# modules/core/linalg.py

"""
Dense exact linear algebra on numpy object arrays of Fractions.

Pivoting takes the first nonzero entry of each column, with no scaling
heuristics, so every result is deterministic.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from modules.core.errors import DimensionMismatchError, SingularBasisChangeError


def fraction_matrix(rows: Sequence[Sequence], ncols: Optional[int] = None) -> np.ndarray:
    """Build an object-dtype matrix of Fractions from nested sequences."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    matrix = np.empty((len(rows), ncols), dtype=object)
    for r, row in enumerate(rows):
        if len(row) != ncols:
            raise DimensionMismatchError(f"Row {r} has {len(row)} entries, expected {ncols}")
        for c, value in enumerate(row):
            matrix[r, c] = Fraction(value)
    return matrix


def zeros(nrows: int, ncols: int) -> np.ndarray:
    matrix = np.empty((nrows, ncols), dtype=object)
    matrix.fill(Fraction(0))
    return matrix


def identity(n: int) -> np.ndarray:
    matrix = zeros(n, n)
    for i in range(n):
        matrix[i, i] = Fraction(1)
    return matrix


def rref(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form.

    Args:
        matrix: object array of Fractions (left untouched)

    Returns:
        (reduced matrix with zero rows removed, pivot column list)
    """
    m = matrix.copy()
    nrows, ncols = m.shape
    pivots: List[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        pivot_row = None
        for r in range(row, nrows):
            if m[r, col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != row:
            m[[row, pivot_row], :] = m[[pivot_row, row], :]
        m[row, :] = m[row, :] / m[row, col]
        for r in range(nrows):
            if r != row and m[r, col] != 0:
                m[r, :] = m[r, :] - m[r, col] * m[row, :]
        pivots.append(col)
        row += 1
    return m[:row, :], pivots


def rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix: np.ndarray) -> List[List[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    ncols = matrix.shape[1]
    if matrix.shape[0] == 0:
        reduced, pivots = zeros(0, ncols), []
    else:
        reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * ncols
        vector[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r, f]
        basis.append(vector)
    return basis


def solve(matrix: np.ndarray, rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    One exact solution of ``matrix @ x = rhs`` with free variables set to zero.

    Returns:
        The solution, or None when the system is inconsistent
    """
    nrows, ncols = matrix.shape
    if len(rhs) != nrows:
        raise DimensionMismatchError(f"Right-hand side has {len(rhs)} entries, expected {nrows}")
    augmented = zeros(nrows, ncols + 1)
    augmented[:, :ncols] = matrix
    for r, value in enumerate(rhs):
        augmented[r, ncols] = Fraction(value)
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        solution[p] = reduced[r, ncols]
    return solution


def inverse(matrix: np.ndarray) -> np.ndarray:
    """Exact inverse by Gauss-Jordan on ``[A | I]``."""
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise DimensionMismatchError(f"Cannot invert a {matrix.shape} matrix")
    augmented = zeros(n, 2 * n)
    augmented[:, :n] = matrix
    augmented[:, n:] = identity(n)
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)) or reduced.shape[0] < n:
        raise SingularBasisChangeError("Matrix is singular")
    return reduced[:, n:]


def determinant(matrix: np.ndarray) -> Fraction:
    """Exact determinant by fraction-valued elimination."""
    m = matrix.copy()
    n = m.shape[0]
    det = Fraction(1)
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if m[r, col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[[col, pivot_row], :] = m[[pivot_row, col], :]
            det = -det
        det *= m[col, col]
        for r in range(col + 1, n):
            if m[r, col] != 0:
                m[r, :] = m[r, :] - (m[r, col] / m[col, col]) * m[col, :]
    return det
