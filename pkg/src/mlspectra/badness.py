"""Closedness certificates for semidefinite projections.

A real subspace L of symmetric matrices is bad when the image of the PSD
cone under the projection with kernel L is not closed; strong duality of
semidefinite programs over L can then fail. Badness is decided by two
conditions on spectrahedral ranks, where s(L) is the maximal rank of a
PSD element of L:

- cond10: s(L) + s(annihilator of L) = n.
- cond11: every M in L whose compression to the kernel of the max-rank
  PSD witness vanishes also has no range-kernel mixing block.

L is not bad exactly when both hold. Spectrahedral ranks are found by
multi-start maximization of the smallest eigenvalue followed by kernel
compression; for rational subspaces every accepted step is re-certified
with exact fraction arithmetic, so the witness and the conditions carry
exact certificates. All starts advance in lockstep (vectorized), so the
outcome does not depend on thread scheduling.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactla
from .geometry import derive_seed, matrix_json
from .subspace import LinearSubspace, SubspaceError
from .symmat import COMPLEX, RATIONAL, REAL, SymMat


@dataclass
class MaxRankResult:
    """Witness and rank; unpacks as the pair (witness, rank)."""

    witness: SymMat
    rank: int
    coefficients: list
    diagnostics: dict

    def __iter__(self):
        return iter((self.witness, self.rank))


def _ascend_lambda_min(comp: np.ndarray, rng: random.Random,
                       starts: int, iters: int):
    """Maximize the smallest eigenvalue of sum c_i comp_i over the unit ball.

    The objective is concave and positively homogeneous, so projected
    supergradient ascent over the ball finds the global maximum; the ball
    projection keeps boundary rays (max value 0) reachable. Returns
    candidates as (value, unit coefficient vector), best first.
    """
    k, m, _ = comp.shape
    scale = max(1e-30, max(float(np.linalg.norm(c)) for c in comp))
    seeds = [[rng.gauss(0.0, 1.0) for _ in range(k)] for _ in range(starts)]
    c = np.array(seeds, dtype=float)
    for i in range(k):  # coordinate rays are cheap and often exact
        e = np.zeros(k)
        e[i] = 1.0
        c = np.vstack([c, e, -e])
    c /= np.maximum(np.linalg.norm(c, axis=1, keepdims=True), 1e-12)
    best_val = np.full(c.shape[0], -np.inf)
    best_c = c.copy()
    stall = 0
    prev_top = -np.inf
    for t in range(iters):
        mats = np.einsum("sk,kab->sab", c, comp)
        w, v = np.linalg.eigh(mats)
        lam = w[:, 0]
        vec = v[:, :, 0]
        upd = lam > best_val
        best_val[upd] = lam[upd]
        best_c[upd] = c[upd]
        top = float(best_val.max())
        if top <= prev_top + 1e-12 * scale:
            stall += 1
            if stall > 50:
                break
        else:
            stall = 0
            prev_top = top
        g = np.einsum("sa,kab,sb->sk", vec, comp, vec).real
        gn = np.maximum(np.linalg.norm(g, axis=1, keepdims=True), 1e-14)
        c = c + (0.7 / math.sqrt(t + 1.0)) * g / gn
        nrm = np.linalg.norm(c, axis=1, keepdims=True)
        c = c / np.maximum(nrm, 1.0)

    # renormalize winners to the sphere and re-evaluate there
    nrm = np.maximum(np.linalg.norm(best_c, axis=1, keepdims=True), 1e-12)
    best_c = best_c / nrm
    mats = np.einsum("sk,kab->sab", best_c, comp)
    vals = np.linalg.eigvalsh(mats)[:, 0]
    order = np.argsort(-vals)
    out = []
    for idx in order:
        cand = best_c[idx]
        if any(abs(float(np.dot(cand, prev))) > 1.0 - 1e-9 for _, prev in out):
            continue
        out.append((float(vals[idx]), cand))
        if len(out) >= 16:
            break
    return out, scale


def _rationalizations(c: np.ndarray):
    nz = np.max(np.abs(c))
    if nz == 0.0:
        return
    c = c / nz
    seen = set()
    for den in (1, 4, 12, 60, 360, 10 ** 4, 10 ** 6):
        cand = tuple(Fraction(float(x)).limit_denominator(den) for x in c)
        if not any(cand) or cand in seen:
            continue
        seen.add(cand)
        yield cand


def _rescale_integer(rows):
    """Scale a rational symmetric matrix by a positive constant to integers."""
    den = 1
    for row in rows:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    scaled = [[v * den for v in row] for row in rows]
    g = 0
    for row in scaled:
        for v in row:
            g = math.gcd(g, abs(v.numerator))
    if g > 1:
        scaled = [[v / g for v in row] for row in scaled]
    return [[Fraction(v) for v in row] for row in scaled]


def _orthonormal_columns(vectors) -> np.ndarray:
    arr = np.array([[float(x) for x in v] for v in vectors], dtype=float).T
    q, _ = np.linalg.qr(arr)
    return q[:, : len(vectors)]


def max_rank_psd(space: LinearSubspace, seed: int = 0, starts: int = 100,
                 iters: int = 240) -> MaxRankResult:
    """A PSD element of the subspace with (heuristically) maximal rank.

    Stage by stage: maximize the smallest eigenvalue of the accumulated
    witness's kernel compression, certify the best candidates, and add any
    that raise the rank. Sums of PSD elements reach the maximal rank, and
    the kernel of a max-rank element is canonical, so accumulation is sound.
    Claims of the form s < n rest on the optimizer saturating; a rank-n
    witness is a proof. The returned witness itself is always certified PSD
    (exactly so for rational subspaces).
    """
    if space.field == COMPLEX:
        raise ValueError("spectrahedral rank needs a real or rational subspace")
    exact = space.field == RATIONAL
    n, k = space.n, space.k
    basis_f = np.array([b.to_numpy() for b in space.basis], dtype=float)
    rng = random.Random(derive_seed(seed, "max-rank-psd"))

    w_rows = [[Fraction(0)] * n for _ in range(n)]
    w_float = np.zeros((n, n))
    coeffs = [Fraction(0)] * k
    rank_w = 0
    stages = []
    saturated = False

    while rank_w < n:
        if rank_w == 0:
            kernel = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        elif exact:
            kernel = exactla.nullspace(w_rows)
        else:
            w_eig, w_vec = np.linalg.eigh(w_float)
            keep = np.abs(w_eig) <= 1e-9 * max(1.0, float(np.abs(w_eig).max()))
            kernel = [w_vec[:, i].tolist() for i in range(n) if keep[i]]
        if not kernel:
            break
        q = _orthonormal_columns(kernel)
        comp = np.einsum("pa,kab,bq->kpq", q.T, basis_f, q)
        cands, scale = _ascend_lambda_min(comp, rng, starts, iters)
        progressed = False
        stage = {"kernel_dim": len(kernel),
                 "best_value": cands[0][0] if cands else None}
        for val, cvec in cands[:12]:
            if val < -1e-6 * scale:
                break
            if exact:
                accept = _try_exact(space, w_rows, rank_w, cvec)
                if accept is not None:
                    w_rows, rank_w, used = accept
                    for i in range(k):
                        coeffs[i] += used[i]
                    progressed = True
            else:
                accept = _try_float(basis_f, w_float, rank_w, cvec)
                if accept is not None:
                    w_float, rank_w = accept
                    progressed = True
            if progressed:
                stage["accepted_value"] = val
                break
        stages.append(stage)
        if not progressed:
            saturated = True
            break

    if exact:
        w_rows = _rescale_integer(w_rows)
        witness = SymMat.from_rows(w_rows, RATIONAL)
    else:
        witness = SymMat.from_rows([[float(v) for v in row] for row in w_float], REAL)
    diag = {
        "stages": stages,
        "saturated": saturated,
        "exact_certified": exact,
        "starts": starts,
    }
    if rank_w == 0:
        diag["note"] = "no PSD element certified"
    return MaxRankResult(witness=witness, rank=rank_w,
                         coefficients=coeffs if exact else [], diagnostics=diag)


def _try_exact(space, w_rows, rank_w, cvec):
    """Exact line search W + delta M; accept on certified rank increase."""
    for c_rat in _rationalizations(cvec):
        m_rows = space.element(list(c_rat)).rows()
        delta = Fraction(1)
        for _ in range(44):
            trial = [[w_rows[i][j] + delta * Fraction(m_rows[i][j])
                      for j in range(len(w_rows))] for i in range(len(w_rows))]
            if exactla.is_psd(trial):
                if exactla.rank(trial) > rank_w:
                    used = [delta * x for x in c_rat]
                    return trial, exactla.rank(trial), used
                break  # PSD but no rank gain; smaller steps cannot help
            delta /= 2
    return None


def _try_float(basis_f, w_float, rank_w, cvec):
    m = np.einsum("k,kab->ab", cvec, basis_f)
    delta = 1.0
    for _ in range(44):
        trial = w_float + delta * m
        eig = np.linalg.eigvalsh(trial)
        top = max(1.0, float(np.abs(eig).max()))
        if eig[0] >= -1e-9 * top:
            r = int(np.sum(eig > 1e-9 * top))
            if r > rank_w:
                return trial, r
            break
        delta /= 2
    return None


@dataclass
class BadCertificate:
    s_L: int
    s_Lperp: int
    cond10: bool
    cond11: bool
    violating_matrix: SymMat | None
    transform: list
    verdict: str
    witness_L: SymMat
    witness_Lperp: SymMat | None
    diagnostics: dict

    def to_json_dict(self) -> dict:
        return {
            "s_L": self.s_L,
            "s_Lperp": self.s_Lperp,
            "cond10": self.cond10,
            "cond11": self.cond11,
            "violating_matrix": (None if self.violating_matrix is None
                                 else matrix_json(self.violating_matrix)),
            "transform": self.transform,
            "verdict": self.verdict,
            "witness_L": matrix_json(self.witness_L),
            "witness_Lperp": (None if self.witness_Lperp is None
                              else matrix_json(self.witness_Lperp)),
            "diagnostics": self.diagnostics,
        }


def _vech_indices(m: int):
    return [(i, j) for i in range(m) for j in range(i, m)]


def _kernel_and_range(w_rows, n: int):
    """Exact kernel basis and a complement spanning the range of W."""
    if all(v == 0 for row in w_rows for v in row):
        kernel = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return kernel, []
    kernel = exactla.nullspace(w_rows)
    _, pivots = exactla.rref(w_rows)
    rng_basis = [[Fraction(w_rows[i][j]) for i in range(n)] for j in pivots]
    return kernel, rng_basis


def _cond11_exact(space, kernel, rng_basis):
    """Basis of {M in L : K^T M K = 0}, then check R^T M K = 0 on it."""
    n, k = space.n, space.k
    m = len(kernel)
    rows = []
    for (a, b) in _vech_indices(m):
        row = []
        for bm in space.basis:
            bm_rows = bm.rows()
            val = sum(Fraction(kernel[a][p]) * Fraction(bm_rows[p][q]) * Fraction(kernel[b][q])
                      for p in range(n) for q in range(n))
            row.append(val)
        rows.append(row)
    null = exactla.nullspace(rows) if rows else [
        [Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for cvec in null:
        mat = space.element(cvec)
        mat_rows = mat.rows()
        for r in rng_basis:
            for kv in kernel:
                val = sum(Fraction(r[p]) * Fraction(mat_rows[p][q]) * Fraction(kv[q])
                          for p in range(n) for q in range(n))
                if val != 0:
                    viol = SymMat.from_rows(_rescale_integer(mat_rows), RATIONAL)
                    return False, viol
    return True, None


def _cond11_float(space, w_float):
    n, k = space.n, space.k
    eig, vec = np.linalg.eigh(w_float)
    top = max(1.0, float(np.abs(eig).max()))
    ker = vec[:, np.abs(eig) <= 1e-9 * top]
    rng_b = vec[:, np.abs(eig) > 1e-9 * top]
    if ker.shape[1] == 0:
        return True, None
    basis_f = np.array([b.to_numpy() for b in space.basis], dtype=float)
    rows = np.array([[ker[:, a] @ bf @ ker[:, b] for bf in basis_f]
                     for (a, b) in _vech_indices(ker.shape[1])])
    if rows.size:
        _, sv, vh = np.linalg.svd(rows)
        r = int(np.sum(sv > 1e-9 * (sv[0] if sv.size else 1.0)))
        null = vh[r:]
    else:
        null = np.eye(k)
    for cvec in null:
        mat = np.einsum("k,kab->ab", cvec, basis_f)
        block = rng_b.T @ mat @ ker
        if block.size and np.max(np.abs(block)) > 1e-8 * max(1.0, float(np.linalg.norm(mat))):
            viol = SymMat.from_rows([[float(v) for v in row] for row in mat], REAL)
            return False, viol
    return True, None


def pataki_certificate(space: LinearSubspace, seed: int = 0,
                       starts: int = 100) -> BadCertificate:
    """Decide badness from spectrahedral ranks of the subspace and annihilator.

    verdict not_bad iff cond10 and cond11 both hold. cond11 is checked on
    the full range-kernel mixing block of the max-rank witness; under cond10
    that block has exactly the shape s_L x s_Lperp. With s_Lperp = 0 the
    checked block has width zero, so cond11 holds vacuously; that convention
    is flagged in the diagnostics because the rank claim it relies on is
    best-effort.
    """
    if space.field == COMPLEX:
        raise ValueError("badness needs a real or rational subspace")
    n = space.n
    try:
        res_l = max_rank_psd(space, seed=derive_seed(seed, "rank-L"), starts=starts)
        try:
            perp = space.annihilator()
        except SubspaceError:
            perp = None
        if perp is not None:
            res_p = max_rank_psd(perp, seed=derive_seed(seed, "rank-perp"), starts=starts)
            s_p = res_p.rank
        else:
            res_p = None
            s_p = 0
    except np.linalg.LinAlgError as exc:
        zero = SymMat.zeros(n, space.field)
        return BadCertificate(
            s_L=0, s_Lperp=0, cond10=False, cond11=False,
            violating_matrix=None,
            transform=[[float(i == j) for j in range(n)] for i in range(n)],
            verdict="undetermined", witness_L=zero, witness_Lperp=None,
            diagnostics={"seed": seed, "error": str(exc)})
    s_l = res_l.rank
    cond10 = (s_l + s_p == n)

    exact = space.field == RATIONAL
    vacuous = s_p == 0
    if vacuous:
        cond11, violating = True, None
    elif exact:
        kernel, rng_basis = _kernel_and_range(res_l.witness.rows(), n)
        cond11, violating = _cond11_exact(space, kernel, rng_basis)
    else:
        cond11, violating = _cond11_float(space, res_l.witness.to_numpy())

    # orthogonal transform putting the witness into diag(positive, 0) form
    w_f = res_l.witness.to_numpy()
    eig, vec = np.linalg.eigh(w_f)
    order = np.argsort(-eig)
    transform = [[float(vec[i, j]) for j in order] for i in range(n)]

    verdict = "not_bad" if (cond10 and cond11) else "bad"
    diagnostics = {
        "seed": seed,
        "cond11_vacuous_zero_perp_rank": vacuous,
        "cond11_block_full_kernel_width": not cond10 and not vacuous,
        "exact_certified": exact,
        "rank_search_L": res_l.diagnostics,
        "rank_search_Lperp": None if res_p is None else res_p.diagnostics,
        "annihilator_dim": 0 if perp is None else perp.k,
    }
    return BadCertificate(
        s_L=s_l,
        s_Lperp=s_p,
        cond10=cond10,
        cond11=cond11,
        violating_matrix=violating,
        transform=transform,
        verdict=verdict,
        witness_L=res_l.witness,
        witness_Lperp=None if res_p is None else res_p.witness,
        diagnostics=diagnostics,
    )
