"""Sparse multivariate polynomials with ring-agnostic coefficients.

Terms map exponent tuples to coefficients. Coefficients may be Fraction,
int, float, or complex; operations never change the coefficient type on
their own. Zero coefficients are pruned eagerly so equality is structural.
"""

from __future__ import annotations


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _wrap(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._wrap(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.nvars, terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative power")
        out = Poly.const(self.nvars, 1)
        base = self
        while p:
            if p & 1:
                out = out * base
            base = base * base
            p >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self.terms == Poly.const(self.nvars, other).terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def diff(self, i: int) -> "Poly":
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            terms[tuple(d)] = terms.get(tuple(d), 0) + c * e[i]
        return Poly(self.nvars, terms)

    def eval(self, point):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                for _ in range(p):
                    v = v * x
            total = total + v
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def min_degree_in(self, i: int) -> int | None:
        return min((e[i] for e in self.terms), default=None)

    def coeff_of(self, i: int, power: int) -> "Poly":
        """Coefficient of x_i^power, as a polynomial with x_i removed... kept
        in the same variable set with exponent zero at position i."""
        terms = {}
        for e, c in self.terms.items():
            if e[i] == power:
                d = list(e)
                d[i] = 0
                terms[tuple(d)] = c
        return Poly(self.nvars, terms)

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def subs(self, values: dict) -> "Poly":
        """Substitute scalar values for some variable indices."""
        out = Poly(self.nvars, {})
        for e, c in self.terms.items():
            v = c
            d = list(e)
            for i, val in values.items():
                for _ in range(e[i]):
                    v = v * val
                d[i] = 0
            out = out + Poly(self.nvars, {tuple(d): v})
        return out

    def to_string(self, names: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[e]
            factors = []
            for i, p in enumerate(e):
                if p == 1:
                    factors.append(names[i])
                elif p > 1:
                    factors.append(f"{names[i]}^{p}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_string()})"


def mat_det(rows):
    """Determinant of a square matrix over any ring (cofactor expansion)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = rows[0][0] * 0
    for j in range(n):
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = rows[0][j] * mat_det(minor)
        acc = acc - term if j % 2 else acc + term
    return acc


def mat_adjugate(rows):
    """Adjugate over any ring; for n = 1 returns [[1]] times the ring unit."""
    n = len(rows)
    if n == 1:
        return [[rows[0][0] * 0 + 1]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = mat_det(minor)
            out[i][j] = -cof if (i + j) % 2 else cof
    return out
