"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction. Sizes stay tiny (at most ~20 rows),
so plain fraction arithmetic with full pivoting is fast enough and keeps
every certificate exact.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]
Mat = list[Row]


def as_fraction_matrix(rows) -> Mat:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[Mat, list[int]]:
    """Reduced row echelon form. Returns (matrix, pivot column indices)."""
    m = as_fraction_matrix(rows)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = Fraction(1, 1) / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows) -> list[Row]:
    """Basis of the right kernel, one vector per free column."""
    m, pivots = rref(rows)
    nc = len(rows[0]) if rows else 0
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for ri, c in enumerate(pivots):
            v[c] = -m[ri][f]
        basis.append(v)
    return basis


def solve(a_rows, b_col) -> Row | None:
    """Solve A x = b exactly; None if inconsistent or underdetermined."""
    nr = len(a_rows)
    nc = len(a_rows[0]) if nr else 0
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(a_rows, b_col)]
    m, pivots = rref(aug)
    if nc in pivots:  # pivot in the constant column
        return None
    if len(pivots) < nc:
        return None
    x = [Fraction(0)] * nc
    for ri, c in enumerate(pivots):
        x[c] = m[ri][nc]
    return x


def determinant(rows) -> Fraction:
    m = as_fraction_matrix(rows)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = Fraction(1, 1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def is_psd(rows) -> bool:
    """Exact PSD test for a symmetric rational matrix (LDL^T pivots).

    A zero pivot forces the entire remaining row to vanish, otherwise the
    matrix has a negative direction.
    """
    m = as_fraction_matrix(rows)
    n = len(m)
    for k in range(n):
        d = m[k][k]
        if d < 0:
            return False
        if d == 0:
            if any(m[k][j] != 0 for j in range(k, n)) or any(m[j][k] != 0 for j in range(k, n)):
                return False
            continue
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / d
                for j in range(k + 1, n):
                    m[i][j] -= f * m[k][j]
                m[i][k] = Fraction(0)
    return True
