"""Adjugate blow-up along rational perturbation directions.

Works in the exact polynomial ring Q[eps, s_1, ..., s_m]: eps is always
variable 0, the remaining variables are free coefficient symbols. A
perturbation X + eps * sum_i b_i D_i of a singular X has an adjugate whose
lowest eps-order coefficient matrix records the direction of blow-up; that
matrix is what eps_adjugate_leading_term extracts.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, mat_adjugate
from .symmat import RATIONAL, SymMat, tri_index, tri_len


class EpsRing:
    """Q[eps, symbols...]; eps is variable index 0."""

    def __init__(self, symbols: tuple[str, ...] | list[str] = ()):
        self.names = ("eps",) + tuple(symbols)
        self.nvars = len(self.names)
        self.eps = Poly.var(self.nvars, 0)

    def symbol(self, name: str) -> Poly:
        return Poly.var(self.nvars, self.names.index(name))

    @property
    def symbols(self) -> list[Poly]:
        return [Poly.var(self.nvars, i) for i in range(1, self.nvars)]

    def const(self, c) -> Poly:
        return Poly.const(self.nvars, Fraction(c))


class EpsPolyMat:
    """Symmetric matrix with entries in an EpsRing."""

    def __init__(self, n: int, entries, ring: EpsRing):
        self.n = n
        self.ring = ring
        entries = tuple(entries)
        if len(entries) != tri_len(n):
            raise ValueError("entry count mismatch")
        self.entries = entries

    @classmethod
    def from_rows(cls, rows, ring: EpsRing) -> "EpsPolyMat":
        n = len(rows)
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i},{j})")
        return cls(n, (rows[i][j] for i in range(n) for j in range(i, n)), ring)

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[tri_index(self.n, i, j)]

    def rows(self) -> list[list[Poly]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def adjugate(self) -> "EpsPolyMat":
        adj = mat_adjugate(self.rows())
        return EpsPolyMat.from_rows(adj, self.ring)

    def determinant(self) -> Poly:
        from .poly import mat_det

        return mat_det(self.rows())

    def max_entry_degree(self) -> int:
        return max((e.total_degree() for e in self.entries), default=0)

    def min_eps_degree(self) -> int | None:
        degs = [e.min_degree_in(0) for e in self.entries if not e.is_zero()]
        return min(degs) if degs else None

    def eps_coefficient(self, d: int) -> "EpsPolyMat":
        return EpsPolyMat(self.n, (e.coeff_of(0, d) for e in self.entries), self.ring)

    def subs_symbols(self, values: dict[str, Fraction]) -> "EpsPolyMat":
        idx = {self.ring.names.index(k): Fraction(v) for k, v in values.items()}
        return EpsPolyMat(self.n, (e.subs(idx) for e in self.entries), self.ring)

    def to_symmat(self) -> SymMat:
        """Constant matrices only; raises if any entry still has a variable."""
        vals = []
        for e in self.entries:
            if e.is_zero():
                vals.append(Fraction(0))
                continue
            if e.total_degree() > 0:
                raise ValueError("entry is not constant")
            vals.append(Fraction(next(iter(e.terms.values()))))
        return SymMat(self.n, RATIONAL, tuple(vals))

    def entry_strings(self) -> list[list[str]]:
        return [[self.entry(i, j).to_string(list(self.ring.names)) for j in range(self.n)] for i in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, EpsPolyMat) and self.n == other.n and self.entries == other.entries

    def __repr__(self):
        return f"EpsPolyMat({self.entry_strings()})"


def perturbation(x: SymMat, dirs, coeffs, ring: EpsRing) -> EpsPolyMat:
    """X + eps * sum_i coeffs[i] * dirs[i] as an exact EpsPolyMat.

    coeffs entries may be Poly in the ring, Fraction, or int.
    """
    if x.field != RATIONAL or any(d.field != RATIONAL for d in dirs):
        raise ValueError("rational field required")
    if len(dirs) != len(coeffs):
        raise ValueError("one coefficient per direction required")
    if any(d.n != x.n for d in dirs):
        raise ValueError("size mismatch")
    n = x.n
    out = []
    for i in range(n):
        for j in range(i, n):
            e = ring.const(x.entry(i, j))
            for d, b in zip(dirs, coeffs):
                if d.entry(i, j) == 0:
                    continue
                term = ring.eps * (b if isinstance(b, Poly) else ring.const(b))
                e = e + term * ring.const(d.entry(i, j))
            out.append(e)
    return EpsPolyMat(n, out, ring)


def eps_adjugate_leading_term(x: SymMat, dirs, coeffs, ring: EpsRing | None = None):
    """Lowest eps-order of adj(X + eps sum b_i D_i). Returns (d, Z).

    Z is the coefficient matrix of eps^d, an EpsPolyMat over the symbols
    still present in the b_i. For invertible X the answer is (0, adj X).
    Raises if the adjugate vanishes identically (perturbation stays in
    corank >= 2 for every eps).
    """
    if ring is None:
        polys = [b for b in coeffs if isinstance(b, Poly)]
        ring = EpsRing() if not polys else None
        if ring is None:
            raise ValueError("pass the EpsRing when coefficients are symbolic")
    m = perturbation(x, dirs, coeffs, ring)
    adj = m.adjugate()
    if adj.is_zero():
        raise ValueError("adjugate vanishes identically along this perturbation")
    d = adj.min_eps_degree()
    return d, adj.eps_coefficient(d)
