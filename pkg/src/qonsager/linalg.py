"""Dense exact linear algebra over either coefficient field.

Matrices are lists of rows; entries are ``Scalar`` or ``fmpq`` values.  The
only field operations used are ``+ - * /`` and truth testing.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Elimination:
    rank: int
    pivots: list[tuple[int, int]]  # (row, column) in the original indexing
    determinant: object | None  # only for square matrices


def bareiss(matrix: list[list], zero, one, col_order: list[int] | None = None) -> Elimination:
    """Fraction-free elimination: every stored entry is a minor of the input.

    Columns are scanned in ``col_order`` (default: left to right); within a
    column the first nonzero row below the current pivot row is chosen.
    """
    A = [list(r) for r in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    cols = list(range(n)) if col_order is None else list(col_order)
    rows = list(range(m))
    prev = one
    r = 0
    sign = 1
    pivots = []
    for c in cols:
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = A[r][c]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            row_i, row_r = A[i], A[r]
            if a_ic:
                for j in cols:
                    if j != c:
                        row_i[j] = (p * row_i[j] - a_ic * row_r[j]) / prev
            else:
                for j in cols:
                    if j != c and row_i[j]:
                        row_i[j] = (p * row_i[j]) / prev
            row_i[c] = zero
        pivots.append((rows[r], c))
        prev = p
        r += 1
    det = None
    if m == n:
        det = (prev if sign > 0 else -prev) if r == n else zero
        if n == 0:
            det = one
    return Elimination(r, pivots, det)


def rank(matrix: list[list], zero, one, col_order: list[int] | None = None) -> int:
    return bareiss(matrix, zero, one, col_order).rank


def inverse(matrix: list[list], zero, one) -> list[list] | None:
    """Gauss-Jordan inverse, or ``None`` when singular."""
    n = len(matrix)
    A = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = one / A[c][c]
        A[c] = [x * inv if x else x for x in A[c]]
        for i in range(n):
            f = A[i][c]
            if i != c and f:
                A[i] = [x - f * y if y else x for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def left_kernel_vector(matrix: list[list], zero, one) -> list | None:
    """A nonzero ``x`` with ``x M = 0``, or ``None`` if the rows are independent."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    # reduce [M | I] by rows; a zero M-part exposes a dependency
    A = [list(row) + [one if i == j else zero for j in range(m)] for i, row in enumerate(matrix)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = one / A[r][c]
        A[r] = [x * inv if x else x for x in A[r]]
        for i in range(m):
            f = A[i][c]
            if i != r and f:
                A[i] = [x - f * y if y else x for x, y in zip(A[i], A[r])]
        r += 1
    for i in range(r, m):
        if not any(A[i][:n]):
            return A[i][n:]
    return None
