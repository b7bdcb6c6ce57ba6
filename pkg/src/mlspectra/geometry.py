"""Likelihood geometry of a subspace of symmetric matrices.

For a subspace L spanned by B_1..B_k, the computations here count and
certify structure of the critical points of log det(K) - tr(S K) on L:

- ml_degree: number of complex critical points for a generic scatter S,
  computed from the cleared critical equations
  tr(B_i adj K) - det(K) tr(B_i S) = 0 with the det = 0 locus filtered out.
- reciprocal_degree: degree of the projectivized closure of the set of
  inverses of invertible elements of L, computed by slicing the adjugate
  image with generic hyperplanes and counting distinct image points.
- tangency_witnesses: rank n-1 elements X of L whose adjugate annihilates
  all of L, i.e. points where L sits inside the tangent hyperplane of the
  determinant hypersurface. Any such witness certifies ml < reciprocal.
- ckn_witness: a pair (X, Y) in L x annihilator(L) with X Y = 0, the rank
  obstruction that every non-maximal subspace must exhibit.

Counts are repeated with an independent random draw; a third draw breaks
ties and persistent disagreement raises CountInstabilityError.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .poly import Poly, mat_adjugate, mat_det
from .seeds import derive_seed
from .polysys import PolySystem, linear_forms_matrix
from .solve import (PathFailureError, SolutionSet, SolveOptions,
                    dedup_projective, solve_total_degree)
from .subspace import LinearSubspace
from .symmat import COMPLEX, RATIONAL, SymMat, determinant, numeric_rank, trace_pairing
from . import track


class NonRegularError(ValueError):
    """The subspace has no invertible element among sampled combinations."""


class CountInstabilityError(RuntimeError):
    """Three independent draws produced three different counts."""


def _basis_arrays(space: LinearSubspace) -> np.ndarray:
    return np.array([b.to_numpy().astype(np.complex128) for b in space.basis])


def _element_np(basis_arr: np.ndarray, x) -> np.ndarray:
    return np.tensordot(np.asarray(x, dtype=np.complex128), basis_arr, axes=1)


def _adj_np(m: np.ndarray) -> np.ndarray:
    """Numeric adjugate by cofactors; safe at singular matrices."""
    n = m.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=m.dtype)
    out = np.empty_like(m)
    idx = list(range(n))
    for i in range(n):
        for j in range(n):
            minor = m[np.ix_([r for r in idx if r != j], [c for c in idx if c != i])]
            out[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return out


def require_regular(space: LinearSubspace, seed: int = 0, tries: int = 24):
    """Returns an invertible element or raises NonRegularError."""
    rng = random.Random(derive_seed(seed, "regular"))
    for _ in range(tries):
        coeffs = [Fraction(rng.randint(-10, 10)) for _ in range(space.k)]
        if not any(coeffs):
            continue
        m = space.element(coeffs)
        d = determinant(m)
        if space.field == RATIONAL:
            if d != 0:
                return m
        elif abs(d) > 1e-10 * max(1.0, m.norm()) ** space.n:
            return m
    raise NonRegularError("no invertible element found; subspace looks non-regular")


def _random_symmetric_int(n: int, rng: random.Random, lo: int = -50, hi: int = 50) -> SymMat:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(lo, hi)
            rows[i][j] = v
            rows[j][i] = v
    return SymMat.from_rows(rows, RATIONAL)


def _random_complex_symmetric(n: int, rng: random.Random) -> np.ndarray:
    m = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(i, n):
            v = complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))
            m[i, j] = v
            m[j, i] = v
    return m


def _trace_against(mat_entries, poly_rows) -> Poly:
    """tr(M P) for symmetric numeric M and symmetric Poly matrix P."""
    n = len(poly_rows)
    acc = Poly(poly_rows[0][0].nvars, {})
    for a in range(n):
        for b in range(n):
            v = mat_entries[a][b]
            if v != 0:
                acc = acc + poly_rows[a][b] * v
    return acc


def critical_system(space: LinearSubspace, scatter: SymMat) -> PolySystem:
    """Cleared critical equations of log det - tr(S .) on the subspace.

    k equations of total degree n in the k coordinates; solutions with
    det = 0 are artifacts of clearing denominators and must be filtered.
    """
    k = space.k
    rows = linear_forms_matrix(space.basis, k)
    adj_rows = mat_adjugate(rows)
    det_poly = mat_det(rows)
    eqs = []
    for b in space.basis:
        lhs = _trace_against(b.rows(), adj_rows)
        c = trace_pairing(b, scatter)
        eqs.append(lhs - det_poly * c)
    return PolySystem(eqs, k)


@dataclass
class DegreeResult:
    """Count plus the solution set it came from; unpacks as (count, solutions)."""

    count: int
    solutions: SolutionSet
    draws: list[dict] = field(default_factory=list)
    disagreement: bool = False

    def __iter__(self):
        return iter((self.count, self.solutions))


def _run_with_retry(system: PolySystem, seed: int, options: SolveOptions) -> SolutionSet:
    last = None
    for attempt in range(3):
        try:
            return solve_total_degree(system, seed=derive_seed(seed, "attempt", attempt),
                                      options=options)
        except PathFailureError as exc:
            last = exc
    raise last


def _lstsq_refine(eqs: list, point, iters: int = 60) -> np.ndarray:
    """Gauss-Newton polish against the original (usually overdetermined)
    equations.

    Witness points can be isolated solutions of multiplicity two or more,
    where the tracker's plain Newton endgame stalls around a few correct
    digits. Least-squares Newton still contracts linearly there and gets
    within roughly sqrt(machine eps), which the verification gates need.
    Divergent refinements are abandoned; the caller re-verifies whatever
    comes back.
    """
    nv = len(point)
    jac = [[eq.diff(j) for j in range(nv)] for eq in eqs]
    z = np.asarray(point, dtype=np.complex128)
    for _ in range(iters):
        f = np.array([eq.eval(z) for eq in eqs], dtype=np.complex128)
        jv = np.array([[d.eval(z) for d in row] for row in jac], dtype=np.complex128)
        try:
            step = np.linalg.lstsq(jv, -f, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        sn = float(np.linalg.norm(step))
        if not np.isfinite(sn) or float(np.linalg.norm(z + step)) > 1e9:
            break
        z = z + step
        if sn <= 1e-15 * (1.0 + float(np.linalg.norm(z))):
            break
    return z


def _rescue_endpoints(system: PolySystem, sol: SolutionSet,
                      options: SolveOptions, iters: int = 40) -> list[tuple]:
    """Newton-polish endpoints stranded just short of t = 1.

    A path passing close to a positive-dimensional excess component of the
    target system (rank-deficient loci solve every equation) can exhaust its
    step budget and get classified as a singular endpoint while sitting near
    a genuine isolated root. One batched least-squares Newton loop pulls
    such strays onto nearby roots. Iteration runs to step stagnation, not to
    the residual tolerance: near small-scale roots every equation is tiny
    and the residual test is satisfied long before the point is accurate
    enough for the caller's geometric gates. Endpoints on the excess locus
    itself drift and stay inaccurate; the gates must reject them afterwards.
    """
    if not sol.singular_points:
        return []
    z = np.asarray([s.point for s in sol.singular_points], dtype=np.complex128)
    active = np.ones(len(z), dtype=bool)
    for _ in range(iters):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        fv = system.evaluate_batch(z[idx])
        jv = system.jacobian_batch(z[idx])
        step = -(np.linalg.pinv(jv) @ fv[:, :, None])[:, :, 0]
        znew = z[idx] + step
        ok = np.isfinite(znew).all(axis=1) & (np.abs(znew).max(axis=1) < 1e9)
        z[idx[ok]] = znew[ok]
        stalled = np.abs(step).max(axis=1) <= 1e-14 * (1.0 + np.abs(znew).max(axis=1))
        active[idx[~ok | stalled]] = False
    res = np.abs(system.evaluate_batch(z)).max(axis=1)
    return [tuple(complex(v) for v in pt)
            for pt, r in zip(z, res) if r <= options.residual_tol]


def _dedup_point_tuples(points: list[tuple], tol: float) -> list[tuple]:
    """First-seen representatives under the same metric as path dedup."""
    reps: list[tuple] = []
    for p in points:
        dup = False
        for r in reps:
            scale = 1.0 + max(max(abs(v) for v in p), max(abs(v) for v in r))
            if max(abs(a - b) for a, b in zip(p, r)) <= tol * scale:
                dup = True
                break
        if not dup:
            reps.append(p)
    return reps


def _majority(run_draw, max_draws: int = 3):
    """Two draws, a third to arbitrate; returns (count, result, draws, disagreement)."""
    results = [run_draw(0), run_draw(1)]
    counts = [r[0] for r in results]
    if counts[0] == counts[1]:
        return counts[0], results[0], [r[2] for r in results], False
    results.append(run_draw(2))
    counts = [r[0] for r in results]
    for value in counts:
        if counts.count(value) >= 2:
            winner = next(r for r in results if r[0] == value)
            return value, winner, [r[2] for r in results], True
    raise CountInstabilityError(f"counts disagree across three draws: {counts}")


def ml_degree(space: LinearSubspace, seed: int = 0,
              options: SolveOptions | None = None) -> DegreeResult:
    """Critical point count of the likelihood equations for generic scatter."""
    options = options or SolveOptions()
    require_regular(space, seed)
    basis_arr = _basis_arrays(space)
    n = space.n
    bmax = max(float(np.linalg.norm(b)) for b in basis_arr)

    def run_draw(i: int):
        rng = random.Random(derive_seed(seed, "mldeg-scatter", i))
        scatter = _random_symmetric_int(n, rng)
        s_arr = scatter.to_numpy().astype(np.complex128)
        tvals = np.sum(basis_arr * s_arr[None, :, :], axis=(1, 2))
        tscale = 1.0 + float(np.abs(tvals).max())

        def stationary(pt) -> bool:
            # Two artifact classes must go.  Exact roots with det = 0 come
            # from clearing denominators (det K = 0 forces tr(B adj K) = 0
            # there, so they even satisfy tr(B K^-1) = S numerically); the
            # det / |K|^n ratio rejects them at any scale.  Debris near the
            # rank-deficient excess locus instead passes that ratio (it is
            # scale invariant, so collapsing toward the origin does not
            # shrink it) but fails tr(B (K^-1 - S)) = 0 by orders of
            # magnitude.  A genuine critical point passes both.
            mat = _element_np(basis_arr, pt)
            nrm = float(np.linalg.norm(mat))
            if nrm < 1e-10:
                return False
            if abs(np.linalg.det(mat)) <= 1e-10 * nrm ** n:
                return False
            try:
                sig = np.linalg.inv(mat)
            except np.linalg.LinAlgError:
                return False
            if not np.all(np.isfinite(sig)):
                return False
            resid = np.abs(np.sum(basis_arr * sig[None, :, :], axis=(1, 2)) - tvals)
            tol = 1e-7 * (tscale + float(np.linalg.norm(sig)) * bmax)
            return bool(resid.max() <= tol)

        system = critical_system(space, scatter)
        sol = _run_with_retry(system, derive_seed(seed, "mldeg", i), options)
        rescued = _rescue_endpoints(system, sol, options)
        pts = [p for p in [s.point for s in sol.solutions] + rescued
               if stationary(p)]
        count = len(_dedup_point_tuples(pts, options.dedup_tol))
        info = {
            "draw": i,
            "count": count,
            "bezout": sol.bezout_bound,
            "paths": sol.status_counts(),
            "suspected_positive_dimensional": sol.suspected_positive_dimensional,
            "scatter": [[str(v) for v in row] for row in scatter.rows()],
        }
        return count, sol, info

    final, winner, draws, disagreement = _majority(run_draw)
    return DegreeResult(count=final, solutions=winner[1], draws=draws,
                        disagreement=disagreement)


def reciprocal_degree(space: LinearSubspace, seed: int = 0,
                      options: SolveOptions | None = None) -> DegreeResult:
    """Degree of the closure of inverses, via generic hyperplane sections.

    Solves the k-1 pulled-back section equations plus a random affine chart
    on the source, discards the adjugate base locus, and counts distinct
    projective image points.
    """
    options = options or SolveOptions()
    require_regular(space, seed)
    basis_arr = _basis_arrays(space)
    n, k = space.n, space.k
    rows = linear_forms_matrix(space.basis, k)
    adj_rows = mat_adjugate(rows)

    def run_draw(i: int):
        rng = random.Random(derive_seed(seed, "recdeg-draw", i))
        eqs = []
        for _ in range(k - 1):
            f = _random_complex_symmetric(n, rng)
            eqs.append(_trace_against(f, adj_rows))
        chart = Poly(k, {})
        for j in range(k):
            chart = chart + Poly.var(k, j, complex(rng.gauss(0, 1), rng.gauss(0, 1)))
        eqs.append(chart - 1.0)
        system = PolySystem(eqs, k)
        sol = _run_with_retry(system, derive_seed(seed, "recdeg", i), options)

        def off_base_locus(pt) -> bool:
            # Base-locus points carry an exactly zero adjugate, so after
            # refinement they sit at roundoff level (~1e-13 relative).  A
            # genuine section point can still come within 1e-6 relative of
            # the rank-one cone on tangency-type spaces, so the cut uses the
            # numeric-rank tolerance, well clear of both populations.
            mat = _element_np(basis_arr, pt)
            nrm = float(np.linalg.norm(mat))
            cut = options.rank_tol * max(1.0, nrm) ** (n - 1)
            return float(np.linalg.norm(_adj_np(mat))) > cut

        rescued = _rescue_endpoints(system, sol, options)
        images = []
        for pt in [s.point for s in sol.solutions] + rescued:
            if not off_base_locus(pt):
                continue  # adjugate base locus
            mat = _element_np(basis_arr, pt)
            images.append(_adj_np(mat)[np.triu_indices(n)])
        reps, _ = dedup_projective(images, tol=1e-6)
        count = len(reps)
        info = {
            "draw": i,
            "count": count,
            "bezout": sol.bezout_bound,
            "paths": sol.status_counts(),
            "suspected_positive_dimensional": sol.suspected_positive_dimensional,
        }
        return count, sol, info

    final, winner, draws, disagreement = _majority(run_draw)
    return DegreeResult(count=final, solutions=winner[1], draws=draws,
                        disagreement=disagreement)


def _normalize_projective(mat: np.ndarray) -> np.ndarray:
    flat = mat.ravel()
    pivot = max(range(flat.size), key=lambda i: abs(flat[i]))
    return mat / flat[pivot]


def _symmat_from_np(mat: np.ndarray) -> SymMat:
    n = mat.shape[0]
    vals = tuple(complex(mat[i, j]) for i in range(n) for j in range(i, n))
    return SymMat(n, COMPLEX, vals)


def tangency_witnesses(space: LinearSubspace, seed: int = 0,
                       options: SolveOptions | None = None) -> list[SymMat]:
    """Rank n-1 elements X of L with adj(X) trace-orthogonal to all of L.

    The k vanishing conditions are squared down to k-1 random combinations
    plus a chart; every candidate is verified against all k original
    equations and the rank condition before it is reported.
    """
    if space.k < 2:
        return []
    options = options or SolveOptions()
    require_regular(space, seed)
    basis_arr = _basis_arrays(space)
    n, k = space.n, space.k
    frame = space.frame()
    rows = linear_forms_matrix(space.basis, k)
    adj_rows = mat_adjugate(rows)
    full_eqs = [_trace_against(f, adj_rows) for f in frame]

    rng = random.Random(derive_seed(seed, "tangency-draw"))
    eqs = []
    for _ in range(k - 1):
        combo = Poly(k, {})
        for eq in full_eqs:
            w = complex(rng.gauss(0, 1), rng.gauss(0, 1))
            combo = combo + eq * w
        eqs.append(combo)
    chart_eq = Poly(k, {})
    for j in range(k):
        chart_eq = chart_eq + Poly.var(k, j, complex(rng.gauss(0, 1), rng.gauss(0, 1)))
    chart_eq = chart_eq - 1.0
    eqs.append(chart_eq)
    system = PolySystem(eqs, k)
    sol = _run_with_retry(system, derive_seed(seed, "tangency"), options)

    refine_eqs = full_eqs + [chart_eq]
    witnesses = []
    for s in sol.solutions + sol.singular_points:
        mat = _element_np(basis_arr, s.point)
        nrm = float(np.linalg.norm(mat))
        if nrm < 1e-10:
            continue
        adj = _adj_np(mat)
        adj_nrm = float(np.linalg.norm(adj))
        if adj_nrm <= 1e-6 * max(1.0, nrm) ** (n - 1):
            continue
        if max(abs(np.sum(f * adj)) for f in frame) > 1e-3 * adj_nrm:
            continue
        point = _lstsq_refine(refine_eqs, s.point)
        mat = _element_np(basis_arr, point)
        nrm = float(np.linalg.norm(mat))
        if nrm < 1e-10:
            continue
        adj = _adj_np(mat)
        adj_nrm = float(np.linalg.norm(adj))
        if adj_nrm <= 1e-6 * max(1.0, nrm) ** (n - 1):
            continue
        pairings = [abs(np.sum(f * adj)) for f in frame]
        if max(pairings) > 1e-7 * adj_nrm:
            continue
        if numeric_rank(_symmat_from_np(mat), tol=options.rank_tol) != n - 1:
            continue
        witnesses.append(_normalize_projective(mat))
    reps, _ = dedup_projective([w.ravel() for w in witnesses], tol=1e-6)
    out = []
    for r in reps:
        mat = r.reshape(n, n)
        out.append(_symmat_from_np(_normalize_projective(mat)))
    return out


@dataclass
class CknWitness:
    x: SymMat
    y: SymMat
    residual: float
    rank_x: int
    rank_y: int

    def to_json_dict(self) -> dict:
        return {
            "X": matrix_json(self.x),
            "Y": matrix_json(self.y),
            "residual": self.residual,
            "rank_x": self.rank_x,
            "rank_y": self.rank_y,
        }


def ckn_witness(space: LinearSubspace, seed: int = 0,
                options: SolveOptions | None = None) -> CknWitness | None:
    """A verified pair X in L, Y in annihilator(L) with X Y = 0, or None.

    The bilinear system X Y = 0 is squared to (k-1) + (N-k-1) random
    combinations plus one chart per factor; verification of all n^2 product
    entries at relative tolerance 1e-7 keeps the reported witness sound.
    """
    options = options or SolveOptions()
    n, k = space.n, space.k
    big_n = space.ambient_dim
    if k >= big_n:
        return None  # annihilator is zero
    perp = space.annihilator()
    kp = perp.k
    nv = k + kp

    # full bilinear equations, entry (a, b) of X Y
    full_eqs = []
    for a in range(n):
        for b in range(n):
            terms = {}
            for i, bx in enumerate(space.basis):
                for j, cy in enumerate(perp.basis):
                    coeff = sum(Fraction(bx.entry(a, l)) * Fraction(cy.entry(l, b))
                                for l in range(n))
                    if coeff != 0:
                        e = [0] * nv
                        e[i] = 1
                        e[k + j] = 1
                        terms[tuple(e)] = coeff
            if terms:
                full_eqs.append(Poly(nv, terms))

    rng = random.Random(derive_seed(seed, "ckn-draw"))
    eqs = []
    for _ in range(nv - 2):
        combo = Poly(nv, {})
        for eq in full_eqs:
            w = complex(rng.gauss(0, 1), rng.gauss(0, 1))
            combo = combo + eq * w
        eqs.append(combo)
    chart_eqs = []
    for lo, hi in ((0, k), (k, nv)):
        chart = Poly(nv, {})
        for j in range(lo, hi):
            chart = chart + Poly.var(nv, j, complex(rng.gauss(0, 1), rng.gauss(0, 1)))
        chart_eqs.append(chart - 1.0)
    system = PolySystem(eqs + chart_eqs, nv)
    sol = _run_with_retry(system, derive_seed(seed, "ckn"), options)

    # the witness pair is often an isolated solution of multiplicity two
    # (products of two vanishing coordinates), so singular endpoints are
    # candidates too and survivors get a least-squares polish
    refine_eqs = full_eqs + chart_eqs
    basis_x = _basis_arrays(space)
    basis_y = _basis_arrays(perp)
    best = None
    for s in sol.solutions + sol.singular_points:
        xmat = _element_np(basis_x, s.point[:k])
        ymat = _element_np(basis_y, s.point[k:])
        nx = float(np.linalg.norm(xmat))
        ny = float(np.linalg.norm(ymat))
        if nx < 1e-10 or ny < 1e-10:
            continue
        if float(np.linalg.norm(xmat @ ymat)) > 1e-3 * nx * ny:
            continue
        point = _lstsq_refine(refine_eqs, s.point)
        xmat = _element_np(basis_x, point[:k])
        ymat = _element_np(basis_y, point[k:])
        nx = float(np.linalg.norm(xmat))
        ny = float(np.linalg.norm(ymat))
        if nx < 1e-10 or ny < 1e-10:
            continue
        rel = float(np.linalg.norm(xmat @ ymat)) / (nx * ny)
        if rel > 1e-7:
            continue
        key = (rel, s.path_id)
        if best is None or key < best[0]:
            best = (key, xmat, ymat)
    if best is None:
        return None
    _, xmat, ymat = best
    xmat = _normalize_projective(xmat)
    ymat = _normalize_projective(ymat)
    rel = float(np.linalg.norm(xmat @ ymat)) / (np.linalg.norm(xmat) * np.linalg.norm(ymat))
    xs = _symmat_from_np(xmat)
    ys = _symmat_from_np(ymat)
    return CknWitness(x=xs, y=ys, residual=rel,
                      rank_x=numeric_rank(xs, tol=options.rank_tol),
                      rank_y=numeric_rank(ys, tol=options.rank_tol))


def scalar_json(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (int, float)):
        return v
    return str(v)


def matrix_json(m: SymMat) -> dict:
    return {
        "n": m.n,
        "field": m.field,
        "rows": [[scalar_json(m.entry(i, j)) for j in range(m.n)] for i in range(m.n)],
    }


@dataclass
class MLReport:
    n: int
    k: int
    ml_degree: int
    reciprocal_degree: int
    is_ml_maximal: bool
    tangency_witnesses: list[SymMat]
    ckn_witness: CknWitness | None
    consistency_violations: list[str]
    diagnostics: dict

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "ml_degree": self.ml_degree,
            "reciprocal_degree": self.reciprocal_degree,
            "is_ml_maximal": self.is_ml_maximal,
            "tangency_witnesses": [matrix_json(w) for w in self.tangency_witnesses],
            "ckn_witness": None if self.ckn_witness is None else self.ckn_witness.to_json_dict(),
            "consistency_violations": list(self.consistency_violations),
            "diagnostics": self.diagnostics,
        }


def ml_report(space: LinearSubspace, seed: int = 0,
              options: SolveOptions | None = None) -> MLReport:
    """Full report: both degrees, witnesses, and cross-checks.

    Internal contradictions (a tangency witness on a maximal space, a
    non-maximal space without a rank witness, ml above reciprocal) are never
    reconciled silently; they land in consistency_violations.
    """
    options = options or SolveOptions()
    ml = ml_degree(space, seed=derive_seed(seed, "ml"), options=options)
    rec = reciprocal_degree(space, seed=derive_seed(seed, "rec"), options=options)
    tang = tangency_witnesses(space, seed=derive_seed(seed, "tan"), options=options)
    ckn = ckn_witness(space, seed=derive_seed(seed, "ckn"), options=options)

    maximal = ml.count == rec.count
    violations = []
    if ml.count > rec.count:
        violations.append(
            f"ml_degree {ml.count} exceeds reciprocal_degree {rec.count}")
    if maximal and tang:
        violations.append(
            "tangency witness found although ml_degree equals reciprocal_degree")
    if not maximal and ckn is None:
        violations.append(
            "ml_degree below reciprocal_degree but no XY=0 witness was found")

    diagnostics = {
        "seed": seed,
        "backend": track.BACKEND,
        "ml_draws": ml.draws,
        "reciprocal_draws": rec.draws,
        "count_disagreement_resolved": bool(ml.disagreement or rec.disagreement),
        "tolerances": {
            "residual_tol": options.residual_tol,
            "dedup_tol": options.dedup_tol,
            "max_steps": options.max_steps,
        },
    }
    return MLReport(
        n=space.n,
        k=space.k,
        ml_degree=ml.count,
        reciprocal_degree=rec.count,
        is_ml_maximal=maximal,
        tangency_witnesses=tang,
        ckn_witness=ckn,
        consistency_violations=violations,
        diagnostics=diagnostics,
    )
