"""Linear subspaces of symmetric matrices under the trace pairing tr(XY).

The ambient space of symmetric n x n matrices has dimension N = n(n+1)/2.
Upper-triangle coordinates are paired with weight 1 on the diagonal and 2
off it, so the annihilator computed here is the trace-orthogonal complement.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import exactla
from .seeds import derive_seed
from .symmat import RATIONAL, REAL, SymMat, tri_len

SCHEMA_FIELDS = (RATIONAL, REAL)


class SubspaceError(ValueError):
    pass


def _pair_weights(n: int) -> list[int]:
    return [1 if i == j else 2 for i in range(n) for j in range(i, n)]


class LinearSubspace:
    """Span of k independent symmetric matrices over one field."""

    def __init__(self, basis):
        basis = tuple(basis)
        if not basis:
            raise SubspaceError("empty basis")
        n = basis[0].n
        if any(b.n != n for b in basis):
            raise SubspaceError("mixed matrix sizes in basis")
        fields = {b.field for b in basis}
        if len(fields) > 1:
            raise SubspaceError("mixed fields in basis")
        self.n = n
        self.k = len(basis)
        self.field = basis[0].field
        self.basis = basis
        self._check_independent()
        self._annihilator = None
        self._frame = None

    @property
    def ambient_dim(self) -> int:
        return tri_len(self.n)

    def _coord_rows(self):
        return [list(b.data) for b in self.basis]

    def _check_independent(self):
        if self.k > self.ambient_dim:
            raise SubspaceError("more basis elements than ambient dimension")
        if self.field == RATIONAL:
            if exactla.rank(self._coord_rows()) != self.k:
                raise SubspaceError("basis is linearly dependent")
        else:
            arr = np.array(self._coord_rows(), dtype=np.complex128)
            if np.linalg.matrix_rank(arr, tol=1e-10) != self.k:
                raise SubspaceError("basis is linearly dependent")

    def element(self, coeffs) -> SymMat:
        if len(coeffs) != self.k:
            raise ValueError("coefficient count mismatch")
        out = self.basis[0].scale(coeffs[0])
        for c, b in zip(coeffs[1:], self.basis[1:]):
            out = out.add(b.scale(c))
        return out

    def annihilator(self) -> "LinearSubspace":
        """Trace-orthogonal complement, dimension N - k."""
        if self._annihilator is not None:
            return self._annihilator
        n = self.n
        w = _pair_weights(n)
        if self.field == RATIONAL:
            rows = [[Fraction(v) * wi for v, wi in zip(b.data, w)] for b in self.basis]
            null = exactla.nullspace(rows)
            mats = [SymMat(n, RATIONAL, tuple(vec)) for vec in null]
        else:
            rows = np.array([[float(v) * wi for v, wi in zip(b.data, w)] for b in self.basis])
            _, _, vh = np.linalg.svd(rows)
            null_vecs = vh[self.k:]
            mats = [SymMat(n, REAL, tuple(float(x) for x in vec)) for vec in null_vecs]
        if not mats:
            raise SubspaceError("annihilator is zero; full ambient space has no complement")
        self._annihilator = LinearSubspace(mats)
        return self._annihilator

    def frame(self) -> list[np.ndarray]:
        """Trace-orthonormal float basis (Gram-Schmidt under tr(XY))."""
        if self._frame is not None:
            return self._frame
        mats = [b.to_numpy() for b in self.basis]
        out: list[np.ndarray] = []
        for m in mats:
            v = m.copy()
            for f in out:
                v = v - np.sum(v * f) * f
            nrm = float(np.sqrt(np.sum(v * v)))
            if nrm < 1e-12:
                raise SubspaceError("frame construction hit a dependent direction")
            out.append(v / nrm)
        self._frame = out
        return out

    def to_json_dict(self) -> dict:
        basis = []
        for b in self.basis:
            flat = []
            for i in range(self.n):
                for j in range(self.n):
                    v = b.entry(i, j)
                    if self.field == RATIONAL:
                        fr = Fraction(v)
                        flat.append(int(fr) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}")
                    else:
                        flat.append(float(v))
            basis.append(flat)
        return {"n": self.n, "field": self.field, "basis": basis}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LinearSubspace":
        try:
            n = int(doc["n"])
            field = doc["field"]
            basis = doc["basis"]
        except (KeyError, TypeError) as exc:
            raise SubspaceError(f"missing or malformed field: {exc}") from exc
        if field not in SCHEMA_FIELDS:
            raise SubspaceError(f"unknown field tag {field!r}")
        if n < 1:
            raise SubspaceError("n must be positive")
        mats = []
        for idx, flat in enumerate(basis):
            if len(flat) != n * n:
                raise SubspaceError(f"basis[{idx}]: expected {n * n} entries, got {len(flat)}")
            try:
                vals = [_parse_scalar(v, field) for v in flat]
            except (ValueError, ZeroDivisionError) as exc:
                raise SubspaceError(f"basis[{idx}]: bad entry ({exc})") from exc
            rows = [vals[i * n:(i + 1) * n] for i in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    if field == RATIONAL:
                        if rows[i][j] != rows[j][i]:
                            raise SubspaceError(f"basis[{idx}]: not symmetric at ({i},{j})")
                    elif abs(rows[i][j] - rows[j][i]) > 1e-12:
                        raise SubspaceError(f"basis[{idx}]: not symmetric at ({i},{j})")
            mats.append(SymMat.from_rows(rows, field))
        try:
            return cls(mats)
        except SubspaceError as exc:
            raise SubspaceError(f"basis: {exc}") from exc


def _parse_scalar(v, field):
    if isinstance(v, str):
        num, _, den = v.partition("/")
        fr = Fraction(int(num), int(den)) if den else Fraction(int(num))
        return fr if field == RATIONAL else float(fr)
    if isinstance(v, bool):
        raise ValueError(f"boolean entry {v!r}")
    if isinstance(v, int):
        return Fraction(v) if field == RATIONAL else float(v)
    if isinstance(v, float):
        if field == RATIONAL:
            raise ValueError(f"float entry {v!r} in a rational basis")
        return v
    raise ValueError(f"unsupported entry {v!r}")


def sample_generic_subspace(n: int, k: int, seed: int) -> LinearSubspace:
    """Seeded random rational subspace: integer entries in [-10, 10].

    Resamples any matrix that is linearly dependent on the ones before it.
    """
    if not 1 <= k <= tri_len(n):
        raise ValueError("k out of range")
    rng = random.Random(derive_seed(seed, "sample", n, k))
    mats: list[SymMat] = []
    rows_so_far: list[list[Fraction]] = []
    attempts = 0
    while len(mats) < k:
        attempts += 1
        if attempts > 64 * k:
            raise SubspaceError("could not sample an independent basis")
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = rng.randint(-10, 10)
                rows[i][j] = v
                rows[j][i] = v
        m = SymMat.from_rows(rows, RATIONAL)
        cand = rows_so_far + [list(m.data)]
        if exactla.rank(cand) == len(cand):
            mats.append(m)
            rows_so_far = cand
    return LinearSubspace(mats)


def random_rational_element(space: LinearSubspace, rng: random.Random) -> SymMat:
    """Random integer combination of the basis, nonzero coefficients."""
    while True:
        coeffs = [Fraction(rng.randint(-10, 10)) for _ in range(space.k)]
        if any(coeffs):
            return space.element(coeffs)


def regular_witness(space: LinearSubspace, seed: int = 0, tries: int = 16) -> SymMat | None:
    """An element with nonzero determinant, or None if none was found."""
    from .symmat import determinant

    rng = random.Random(derive_seed(seed, "regular"))
    for _ in range(tries):
        m = random_rational_element(space, rng)
        d = determinant(m)
        if d != 0:
            return m
    return None
