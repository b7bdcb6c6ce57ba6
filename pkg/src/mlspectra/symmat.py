"""Symmetric matrices with an explicit scalar field tag.

SymMat stores the upper triangle row-major and is immutable, so instances
can be shared freely across threads and used as golden values in tests.
Field tags: "rational" entries are Fraction, "real" are float, "complex"
are complex. Conversions go exact -> floating only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactla

RATIONAL = "rational"
REAL = "real"
COMPLEX = "complex"


def _infer_field(values) -> str:
    if any(isinstance(v, complex) for v in values):
        return COMPLEX
    if any(isinstance(v, float) or isinstance(v, np.floating) for v in values):
        return REAL
    return RATIONAL


def _coerce(value, field):
    if field == RATIONAL:
        return Fraction(value)
    if field == REAL:
        return float(value)
    return complex(value)


def tri_len(n: int) -> int:
    return n * (n + 1) // 2


def tri_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * n - i * (i - 1) // 2 + (j - i)


@dataclass(frozen=True)
class SymMat:
    n: int
    field: str
    data: tuple  # upper triangle, row-major

    def __post_init__(self):
        if len(self.data) != tri_len(self.n):
            raise ValueError(f"expected {tri_len(self.n)} entries, got {len(self.data)}")

    @classmethod
    def from_rows(cls, rows, field: str | None = None) -> "SymMat":
        n = len(rows)
        vals = [rows[i][j] for i in range(n) for j in range(i, n)]
        if field is None:
            field = _infer_field(vals)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = rows[i][j], rows[j][i]
                if field == RATIONAL:
                    if Fraction(a) != Fraction(b):
                        raise ValueError(f"not symmetric at ({i},{j})")
                elif abs(a - b) > 1e-12:
                    raise ValueError(f"not symmetric at ({i},{j})")
        return cls(n, field, tuple(_coerce(v, field) for v in vals))

    @classmethod
    def zeros(cls, n: int, field: str = RATIONAL) -> "SymMat":
        return cls(n, field, tuple(_coerce(0, field) for _ in range(tri_len(n))))

    @classmethod
    def identity(cls, n: int, field: str = RATIONAL) -> "SymMat":
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows, field)

    @classmethod
    def unit(cls, n: int, i: int, j: int, field: str = RATIONAL) -> "SymMat":
        """E_ii on the diagonal, E_ij + E_ji off it."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = 1
        rows[j][i] = 1
        return cls.from_rows(rows, field)

    def entry(self, i: int, j: int):
        return self.data[tri_index(self.n, i, j)]

    def rows(self) -> list[list]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def to_numpy(self) -> np.ndarray:
        dtype = complex if self.field == COMPLEX else float
        return np.array([[dtype(self.entry(i, j)) for j in range(self.n)] for i in range(self.n)], dtype=dtype)

    def to_real(self) -> "SymMat":
        if self.field == COMPLEX:
            raise ValueError("cannot narrow complex to real")
        return SymMat(self.n, REAL, tuple(float(v) for v in self.data))

    def to_complex(self) -> "SymMat":
        return SymMat(self.n, COMPLEX, tuple(complex(v) for v in self.data))

    def scale(self, c) -> "SymMat":
        field = _infer_field([c, self.data[0]]) if self.data else self.field
        field = _join_field(self.field, field)
        return SymMat(self.n, field, tuple(_coerce(v * c, field) for v in self.data))

    def add(self, other: "SymMat") -> "SymMat":
        if self.n != other.n:
            raise ValueError("size mismatch")
        field = _join_field(self.field, other.field)
        return SymMat(self.n, field, tuple(_coerce(a + b, field) for a, b in zip(self.data, other.data)))

    def sub(self, other: "SymMat") -> "SymMat":
        return self.add(other.scale(-1))

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_numpy()))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.data)


def _join_field(a: str, b: str) -> str:
    order = {RATIONAL: 0, REAL: 1, COMPLEX: 2}
    return a if order[a] >= order[b] else b


def matmul(a: SymMat, b: SymMat) -> list[list]:
    """Full (generally non-symmetric) product A B as nested lists."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    n = a.n
    return [
        [sum(a.entry(i, l) * b.entry(l, j) for l in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _det_rows(rows) -> object:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = rows[0][j] * _det_rows(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else rows[0][0] * 0


def determinant(m: SymMat):
    return _det_rows(m.rows())


def adjugate(m: SymMat) -> SymMat:
    """Matrix of signed cofactors, transposed; satisfies M adj(M) = det(M) I.

    For n = 1 the adjugate is [[1]] regardless of the entry.
    """
    n = m.n
    if n == 1:
        return SymMat(1, m.field, (_coerce(1, m.field),))
    rows = m.rows()
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            minor = [[rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = _det_rows(minor)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof
            out[j][i] = cof
    return SymMat.from_rows(out, m.field)


def trace_pairing(a: SymMat, b: SymMat):
    """tr(A B) for symmetric A, B; bilinear, no conjugation."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    n = a.n
    total = None
    for i in range(n):
        for j in range(i, n):
            t = a.entry(i, j) * b.entry(i, j)
            if i != j:
                t = t + t
            total = t if total is None else total + t
    return total


def numeric_rank(m: SymMat, tol: float = 1e-8) -> int:
    """Rank. Exact elimination for rational entries, SVD threshold otherwise.

    Floating ranks count singular values above tol * largest.
    """
    if m.field == RATIONAL:
        return exactla.rank(m.rows())
    arr = m.to_numpy()
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))
