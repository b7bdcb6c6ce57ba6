"""Polynomial systems prepared for path tracking.

Equations are normalized per equation by the largest coefficient modulus,
then flattened into CSR-style arrays (coefficients, exponent rows, offsets)
shared by the compiled and pure-Python kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly import Poly


class NonSquareSystemError(ValueError):
    pass


@dataclass
class CompiledSystem:
    nvars: int
    coeffs: np.ndarray   # complex128 [T]
    exps: np.ndarray     # int32 [T, nvars]
    offs: np.ndarray     # int32 [neq + 1]
    degrees: np.ndarray  # int32 [neq], total degree per equation
    scales: np.ndarray   # float64 [neq], applied normalization divisor


class PolySystem:
    def __init__(self, equations, nvars: int | None = None):
        equations = tuple(equations)
        if not equations:
            raise ValueError("empty system")
        if nvars is None:
            nvars = equations[0].nvars
        if any(eq.nvars != nvars for eq in equations):
            raise ValueError("variable count mismatch across equations")
        self.nvars = nvars
        self.equations = equations
        self._compiled: CompiledSystem | None = None

    @property
    def neqs(self) -> int:
        return len(self.equations)

    def degrees(self) -> list[int]:
        return [eq.total_degree() for eq in self.equations]

    def bezout_bound(self) -> int:
        out = 1
        for d in self.degrees():
            out *= d
        return out

    def require_square(self):
        if self.neqs != self.nvars:
            raise NonSquareSystemError(
                f"system has {self.neqs} equations in {self.nvars} unknowns"
            )
        if any(d < 1 for d in self.degrees()):
            raise NonSquareSystemError("every equation must have positive degree")

    def compile(self) -> CompiledSystem:
        if self._compiled is not None:
            return self._compiled
        coeffs: list[complex] = []
        exps: list[tuple[int, ...]] = []
        offs = [0]
        scales = []
        for eq in self.equations:
            if eq.is_zero():
                raise ValueError("zero equation in system")
            items = sorted(eq.terms.items())
            vals = [complex(c) for _, c in items]
            scale = max(abs(v) for v in vals)
            scales.append(scale)
            for (e, _), v in zip(items, vals):
                exps.append(e)
                coeffs.append(v / scale)
            offs.append(len(coeffs))
        compiled = CompiledSystem(
            nvars=self.nvars,
            coeffs=np.asarray(coeffs, dtype=np.complex128),
            exps=np.asarray(exps, dtype=np.int32).reshape(len(coeffs), self.nvars),
            offs=np.asarray(offs, dtype=np.int32),
            degrees=np.asarray(self.degrees(), dtype=np.int32),
            scales=np.asarray(scales, dtype=np.float64),
        )
        self._compiled = compiled
        return compiled

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Values of the normalized equations at x (complex vector)."""
        c = self.compile()
        mono = np.prod(np.power(x[None, :], c.exps), axis=1)
        vals = c.coeffs * mono
        return np.add.reduceat(vals, c.offs[:-1])

    def residual(self, x) -> float:
        x = np.asarray(x, dtype=np.complex128)
        return float(np.max(np.abs(self.evaluate(x))))

    def evaluate_batch(self, z: np.ndarray) -> np.ndarray:
        """Normalized equation values at every row of z; returns (B, neqs)."""
        c = self.compile()
        zp = np.power(z[:, None, :], c.exps[None, :, :])
        mono = c.coeffs[None, :] * np.prod(zp, axis=2)
        return np.add.reduceat(mono, c.offs[:-1], axis=1)

    def jacobian_batch(self, z: np.ndarray) -> np.ndarray:
        """Normalized Jacobians at every row of z; returns (B, neqs, nvars)."""
        c = self.compile()
        nv = self.nvars
        zp = np.power(z[:, None, :], c.exps[None, :, :])          # (B, T, nv)
        pref = np.ones_like(zp)
        if nv > 1:
            pref[:, :, 1:] = np.cumprod(zp[:, :, :-1], axis=2)
        suf = np.ones_like(zp)
        if nv > 1:
            suf[:, :, :-1] = np.cumprod(zp[:, :, ::-1], axis=2)[:, :, -2::-1]
        e = c.exps[None, :, :]
        # e * z^(e-1), with the e = 0 case forced to zero before the power
        dz = np.where(e > 0, e * np.power(z[:, None, :], np.maximum(e - 1, 0)), 0.0)
        terms = c.coeffs[None, :, None] * pref * suf * dz
        return np.add.reduceat(terms, c.offs[:-1], axis=1)


def linear_forms_matrix(basis_mats, nvars: int, offset: int = 0):
    """Entries of sum_i x_{offset+i} B_i as a full matrix of linear Polys."""
    n = basis_mats[0].n
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            p = Poly(nvars, {})
            for i, b in enumerate(basis_mats):
                v = b.entry(r, c)
                if v != 0:
                    p = p + Poly.var(nvars, offset + i, v)
            row.append(p)
        rows.append(row)
    return rows
