"""Named reproduction checks with time budgets.

Each criterion is a function seed -> CriterionResult; run_all executes them
in a fixed order, enforcing its wall-clock budget and collecting both human
lines and machine-readable failures. Rank witnesses found along the way are
registered so the property suite can test duality on everything the run
produced.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import badness, builtin, exactla, geometry
from .epsmat import EpsPolyMat, EpsRing, eps_adjugate_leading_term, perturbation
from .solve import angular_distance
from .subspace import LinearSubspace, sample_generic_subspace
from .symmat import (RATIONAL, SymMat, adjugate, determinant, matmul,
                     numeric_rank, trace_pairing, tri_len)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    elapsed: float
    budget: float | None
    details: list[str]
    failures: list[str]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed, 3),
            "budget_seconds": self.budget,
            "details": self.details,
            "failures": self.failures,
        }


class _Recorder:
    def __init__(self):
        self.details: list[str] = []
        self.failures: list[str] = []

    def check(self, cond: bool, msg: str) -> bool:
        if cond:
            self.details.append("ok: " + msg)
        else:
            self.details.append("FAIL: " + msg)
            self.failures.append(msg)
        return bool(cond)

    def note(self, msg: str):
        self.details.append(msg)


_REGISTRY: list[dict] = []


def register_witness(label: str, space: LinearSubspace, witness):
    _REGISTRY.append({"label": label, "space": space, "witness": witness})


def witness_registry() -> list[dict]:
    return list(_REGISTRY)


def clear_registry():
    _REGISTRY.clear()


def _proportional_to(mat: SymMat, target: SymMat, tol: float = 1e-6) -> bool:
    a = mat.to_numpy().ravel()
    b = target.to_numpy().ravel()
    return angular_distance(a, b) <= tol


def _criterion_type_c(seed: int, rec: _Recorder):
    space = builtin.type_c_net()
    rep = geometry.ml_report(space, seed=geometry.derive_seed(seed, "c1"))
    rec.check(rep.ml_degree == 2, f"ml_degree = {rep.ml_degree}, expected 2")
    rec.check(rep.reciprocal_degree == 3,
              f"reciprocal_degree = {rep.reciprocal_degree}, expected 3")
    rec.check(not rep.is_ml_maximal, "is_ml_maximal is false")
    rec.check(not rep.tangency_witnesses,
              f"tangency witness list empty (got {len(rep.tangency_witnesses)})")
    rec.check(not rep.consistency_violations,
              f"no consistency violations (got {rep.consistency_violations})")
    w = rep.ckn_witness
    if rec.check(w is not None, "rank witness pair found"):
        rec.check(w.residual <= 1e-7, f"witness residual {w.residual:.2e} <= 1e-7")
        rec.check(_proportional_to(w.y, SymMat.unit(3, 2, 2)),
                  "witness Y proportional to E33")
        register_witness("type-c-net", space, w)


def _criterion_polar_diagonal(seed: int, rec: _Recorder):
    space = builtin.polar_diagonal_net()
    ml = geometry.ml_degree(space, seed=geometry.derive_seed(seed, "c2-ml"))
    rd = geometry.reciprocal_degree(space, seed=geometry.derive_seed(seed, "c2-rec"))
    rec.check(ml.count == 1, f"ml_degree = {ml.count}, expected 1")
    rec.check(rd.count == 4, f"reciprocal_degree = {rd.count}, expected 4")


def _criterion_diagonal(seed: int, rec: _Recorder):
    space = builtin.diagonal_net()
    rep = geometry.ml_report(space, seed=geometry.derive_seed(seed, "c3"))
    rec.check(rep.ml_degree == 1, f"ml_degree = {rep.ml_degree}, expected 1")
    rec.check(rep.reciprocal_degree == 1,
              f"reciprocal_degree = {rep.reciprocal_degree}, expected 1")
    rec.check(rep.is_ml_maximal, "is_ml_maximal is true")
    rec.check(not rep.consistency_violations,
              f"no consistency violations (got {rep.consistency_violations})")
    if rec.check(rep.ckn_witness is not None, "rank witness pair found"):
        register_witness("diagonal-net", space, rep.ckn_witness)


def generic_corpus() -> list[tuple[str, LinearSubspace]]:
    """The seeded generic subspaces shared by the sweep and badness checks."""
    out = []
    for k in (2, 3, 4, 5):
        for s in range(5):
            out.append((f"n3-k{k}-s{s}", sample_generic_subspace(3, k, s)))
    for s in range(5):
        out.append((f"n4-k2-s{s}", sample_generic_subspace(4, 2, s)))
    return out


def _criterion_genericity(seed: int, rec: _Recorder):
    for label, space in generic_corpus():
        rep = geometry.ml_report(space, seed=geometry.derive_seed(seed, "c4", label))
        ok = (rep.ml_degree == rep.reciprocal_degree
              and not rep.tangency_witnesses
              and rep.ckn_witness is None
              and not rep.consistency_violations)
        rec.check(ok, f"{label}: ml = rec = {rep.ml_degree}, no witnesses"
                  if ok else
                  f"{label}: ml {rep.ml_degree} rec {rep.reciprocal_degree} "
                  f"tangency {len(rep.tangency_witnesses)} "
                  f"ckn {rep.ckn_witness is not None} "
                  f"violations {rep.consistency_violations}")


def _random_symmetric(n: int, rng: random.Random, lo: int = -6, hi: int = 6) -> SymMat:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return SymMat.from_rows(rows, RATIONAL)


def _rank_two_psd(rng: random.Random, n: int = 3) -> SymMat:
    while True:
        u = [rng.randint(-3, 3) for _ in range(n)]
        v = [rng.randint(-3, 3) for _ in range(n)]
        rows = [[Fraction(u[i] * u[j] + v[i] * v[j]) for j in range(n)] for i in range(n)]
        m = SymMat.from_rows(rows, RATIONAL)
        if numeric_rank(m) == n - 1:
            return m


def _criterion_hyperplanes(seed: int, rec: _Recorder):
    rng = random.Random(geometry.derive_seed(seed, "c5"))
    cases = []
    for i in range(10):
        cases.append((f"singular-{i}", _rank_two_psd(rng), True))
    made = 0
    while made < 5:
        a = _random_symmetric(3, rng)
        if determinant(a) != 0:
            cases.append((f"nonsingular-{made}", a, False))
            made += 1
    for label, a, singular in cases:
        space = LinearSubspace([a]).annihilator()
        rep = geometry.ml_report(space, seed=geometry.derive_seed(seed, "c5", label))
        if singular:
            ok = rep.ml_degree < rep.reciprocal_degree
            rec.check(ok, f"{label}: ml {rep.ml_degree} < rec {rep.reciprocal_degree}"
                      if ok else
                      f"{label}: ml {rep.ml_degree} vs rec {rep.reciprocal_degree}, "
                      "expected strict <")
            if rep.ckn_witness is not None:
                register_witness(f"hyperplane-{label}", space, rep.ckn_witness)
        else:
            rec.check(rep.ml_degree == rep.reciprocal_degree,
                      f"{label}: ml {rep.ml_degree} = rec {rep.reciprocal_degree}")
        rec.check(not rep.consistency_violations,
                  f"{label}: no consistency violations")


def tangency_corpus(seed: int = 0) -> list[tuple[str, LinearSubspace, SymMat]]:
    """Subspaces spanned by a rank-2 base point and generic tangent directions.

    Every space here sits inside the tangent hyperplane of the determinant
    hypersurface at its base point, so each is non-maximal by construction
    with the base point as tangency witness. The base point is PSD so the
    badness cross-check applies over the reals.
    """
    out = []
    n = 3
    ident = SymMat.identity(n, RATIONAL)
    for i in range(10):
        k = 2 + (i % 2)
        rng = random.Random(geometry.derive_seed(seed, "tangency-corpus", i))
        for attempt in range(64):
            x0 = _rank_two_psd(rng)
            adj0 = adjugate(x0)
            q = trace_pairing(adj0, ident)
            if q == 0:
                continue
            mats = [x0]
            rows = [list(x0.data)]
            good = True
            tries = 0
            while len(mats) < k:
                tries += 1
                if tries > 64:
                    good = False
                    break
                m = _random_symmetric(n, rng, -5, 5)
                p = trace_pairing(adj0, m)
                d = m.scale(q).sub(ident.scale(p))  # exact tangent direction
                cand = rows + [list(d.data)]
                if exactla.rank(cand) == len(cand):
                    mats.append(d)
                    rows = cand
            if not good:
                continue
            space = LinearSubspace(mats)
            try:
                geometry.require_regular(space, seed=i)
            except geometry.NonRegularError:
                continue
            out.append((f"tangency-{i}-k{k}", space, x0))
            break
        else:
            raise RuntimeError(f"could not build tangency space {i}")
    return out


def _criterion_tangency(seed: int, rec: _Recorder):
    for label, space, x0 in tangency_corpus(seed):
        rep = geometry.ml_report(space, seed=geometry.derive_seed(seed, "c6", label))
        rec.check(rep.ml_degree < rep.reciprocal_degree,
                  f"{label}: ml {rep.ml_degree} < rec {rep.reciprocal_degree}")
        x0_vec = x0.to_numpy().ravel()
        dists = [angular_distance(w.to_numpy().ravel(), x0_vec)
                 for w in rep.tangency_witnesses]
        best = min(dists) if dists else float("inf")
        rec.check(best <= 1e-6,
                  f"{label}: tangency witness recovers base point "
                  f"(angular distance {best:.2e})")
        rec.check(not rep.consistency_violations,
                  f"{label}: no consistency violations")
        if rep.ckn_witness is not None:
            register_witness(label, space, rep.ckn_witness)


def _criterion_eps_blowup(seed: int, rec: _Recorder):
    x0 = builtin.blowup_base()
    dirs = builtin.blowup_directions()

    ring_b = EpsRing(("b01", "b02", "b1", "b2"))
    b01, b02, b1, b2 = ring_b.symbols
    eps = ring_b.eps
    one = ring_b.const(1)
    zero = ring_b.const(0)

    pert = perturbation(x0, dirs, [b01, b02, b1, b2], ring_b)
    expected_pert = EpsPolyMat.from_rows([
        [one, eps * b02, eps * b01],
        [eps * b02, eps * b1, eps * b2],
        [eps * b01, eps * b2, -(eps * b1)],
    ], ring_b)
    rec.check(pert == expected_pert, "first perturbation matrix matches")

    adj = pert.adjugate()
    e2 = eps * eps
    expected_adj = EpsPolyMat.from_rows([
        [-(e2 * (b1 * b1 + b2 * b2)), e2 * (b02 * b1 + b01 * b2), e2 * (b02 * b2 - b01 * b1)],
        [e2 * (b02 * b1 + b01 * b2), -(eps * (b1 + eps * b01 * b01)), -(eps * (b2 - eps * b01 * b02))],
        [e2 * (b02 * b2 - b01 * b1), -(eps * (b2 - eps * b01 * b02)), eps * (b1 - eps * b02 * b02)],
    ], ring_b)
    rec.check(adj == expected_adj, "first adjugate matches entry by entry")

    d, z = eps_adjugate_leading_term(x0, dirs, [b01, b02, b1, b2], ring_b)
    expected_z = EpsPolyMat.from_rows([
        [zero, zero, zero],
        [zero, -b1, -b2],
        [zero, -b2, b1],
    ], ring_b)
    rec.check(d == 1, f"first leading order d = {d}, expected 1")
    rec.check(z == expected_z, "first leading coefficient matrix matches")

    ring_c = EpsRing(("c01", "c02", "c1", "c2"))
    c01, c02, c1, c2 = ring_c.symbols
    ep = ring_c.eps
    onec = ring_c.const(1)
    zeroc = ring_c.const(0)
    coeffs = [c01, c02 * ep, c1 * ep, c2 * ep]

    pert2 = perturbation(x0, dirs, coeffs, ring_c)
    ep2 = ep * ep
    expected_pert2 = EpsPolyMat.from_rows([
        [onec, ep2 * c02, ep * c01],
        [ep2 * c02, ep2 * c1, ep2 * c2],
        [ep * c01, ep2 * c2, -(ep2 * c1)],
    ], ring_c)
    rec.check(pert2 == expected_pert2, "second perturbation matrix matches")

    adj2 = pert2.adjugate()
    ep3 = ep2 * ep
    ep4 = ep2 * ep2
    expected_adj2 = EpsPolyMat.from_rows([
        [-(ep4 * (c1 * c1 + c2 * c2)),
         ep3 * (ep * c02 * c1 + c01 * c2),
         ep3 * (ep * c02 * c2 - c01 * c1)],
        [ep3 * (ep * c02 * c1 + c01 * c2),
         -(ep2 * (c1 + c01 * c01)),
         -(ep2 * (c2 - ep * c01 * c02))],
        [ep3 * (ep * c02 * c2 - c01 * c1),
         -(ep2 * (c2 - ep * c01 * c02)),
         ep2 * (c1 - ep2 * c02 * c02)],
    ], ring_c)
    rec.check(adj2 == expected_adj2, "second adjugate matches entry by entry")

    d2, z2 = eps_adjugate_leading_term(x0, dirs, coeffs, ring_c)
    expected_z2 = EpsPolyMat.from_rows([
        [zeroc, zeroc, zeroc],
        [zeroc, -(c1 + c01 * c01), -c2],
        [zeroc, -c2, c1],
    ], ring_c)
    rec.check(d2 == 2, f"second leading order d = {d2}, expected 2")
    rec.check(z2 == expected_z2, "second leading coefficient matrix matches")

    at = z2.subs_symbols({"c01": Fraction(1), "c02": Fraction(0),
                          "c1": Fraction(1), "c2": Fraction(0)}).to_symmat()
    block = [[at.entry(1, 1), at.entry(1, 2)], [at.entry(2, 1), at.entry(2, 2)]]
    rec.check(block == [[Fraction(-2), Fraction(0)], [Fraction(0), Fraction(1)]],
              "specialized lower-right block is [[-2,0],[0,1]]")
    det = block[0][0] * block[1][1] - block[0][1] * block[1][0]
    inv = [[block[1][1] / det, -block[0][1] / det],
           [-block[1][0] / det, block[0][0] / det]]
    rec.check(inv == [[Fraction(-1, 2), Fraction(0)], [Fraction(0), Fraction(1)]],
              "its exact inverse is [[-1/2,0],[0,1]]")


def _criterion_badness(seed: int, rec: _Recorder):
    cert = badness.pataki_certificate(builtin.nonclosed_2x2(),
                                      seed=geometry.derive_seed(seed, "c8-nonclosed"))
    rec.check(cert.verdict == "bad", f"nonclosed-2x2 verdict {cert.verdict}, expected bad")
    rec.check(cert.s_L == 1 and cert.s_Lperp == 1,
              f"nonclosed-2x2 ranks ({cert.s_L},{cert.s_Lperp}), expected (1,1)")
    rec.check(cert.cond10 and not cert.cond11,
              f"nonclosed-2x2 cond10 {cert.cond10} cond11 {cert.cond11}")
    v = cert.violating_matrix
    ok = v is not None and _proportional_to(v, SymMat.unit(2, 0, 1))
    rec.check(ok, "violating matrix proportional to E12+E21")

    for label, space in generic_corpus()[:20]:
        c = badness.pataki_certificate(space, seed=geometry.derive_seed(seed, "c8", label))
        rec.check(c.verdict == "not_bad", f"{label}: verdict {c.verdict}, expected not_bad")

    for label, space, _ in tangency_corpus(seed):
        c = badness.pataki_certificate(space, seed=geometry.derive_seed(seed, "c8", label))
        rec.check(c.verdict == "bad", f"{label}: verdict {c.verdict}, expected bad")


def _criterion_properties(seed: int, rec: _Recorder):
    rng = random.Random(geometry.derive_seed(seed, "c9"))

    bad_adj = 0
    for t in range(200):
        n = rng.randint(1, 4)
        kind = t % 3
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                if kind == 0:
                    v = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                elif kind == 1:
                    v = rng.gauss(0, 1)
                else:
                    v = complex(rng.gauss(0, 1), rng.gauss(0, 1))
                rows[i][j] = rows[j][i] = v
        m = SymMat.from_rows(rows)
        a = adjugate(m)
        d = determinant(m)
        prod = matmul(m, a)
        if kind == 0:
            exact_ok = all(prod[i][j] == (d if i == j else 0)
                           for i in range(n) for j in range(n))
            if not exact_ok:
                bad_adj += 1
        else:
            arr = np.array(prod, dtype=complex) - d * np.eye(n)
            scale = max(1.0, float(np.linalg.norm(m.to_numpy())) ** n)
            if float(np.abs(arr).max()) > 1e-10 * scale:
                bad_adj += 1
    rec.check(bad_adj == 0, f"adjugate identity M adj(M) = det(M) I on 200 draws "
                            f"({bad_adj} failures)")

    bad_ann = 0
    for t in range(50):
        n = rng.randint(2, 4)
        big = tri_len(n)
        k = rng.randint(1, big - 1)
        sp = sample_generic_subspace(n, k, 1000 + t)
        perp = sp.annihilator()
        dd = perp.annihilator()
        stacked = [list(b.data) for b in sp.basis] + [list(b.data) for b in dd.basis]
        if not (perp.k == big - k and dd.k == k and exactla.rank(stacked) == k):
            bad_ann += 1
    rec.check(bad_ann == 0,
              f"annihilator dimension and double-annihilator on 50 subspaces "
              f"({bad_ann} failures)")

    entries = witness_registry()
    if not entries:
        for name in ("type-c-net", "diagonal-net"):
            space = builtin.get_builtin(name)
            w = geometry.ckn_witness(space, seed=geometry.derive_seed(seed, "c9", name))
            if w is not None:
                register_witness(name, space, w)
        entries = witness_registry()
    rec.note(f"witness registry holds {len(entries)} pairs")
    bad_dual = 0
    for item in entries:
        space, w = item["space"], item["witness"]
        x = w.x.to_numpy()
        y = w.y.to_numpy()
        nx, ny = np.linalg.norm(x), np.linalg.norm(y)
        if ny == 0 or nx == 0 or np.linalg.norm(y @ x) > 1e-7 * nx * ny:
            bad_dual += 1
            continue
        # swapped pair must be a witness for the annihilator
        perp = space.annihilator()
        bx = np.array([b.to_numpy().ravel() for b in perp.basis], dtype=complex).T
        coef = np.linalg.lstsq(bx, y.ravel(), rcond=None)[0]
        resid = float(np.linalg.norm(bx @ coef - y.ravel()))
        if resid > 1e-7 * ny:
            bad_dual += 1
    rec.check(bad_dual == 0,
              f"rank-witness duality on {len(entries)} registered pairs "
              f"({bad_dual} failures)")

    stability_spaces = [
        ("type-c-net", builtin.type_c_net()),
        ("diagonal-net", builtin.diagonal_net()),
        ("polar-diagonal-net", builtin.polar_diagonal_net()),
        ("generic-n3-k3-s0", sample_generic_subspace(3, 3, 0)),
    ]
    for label, space in stability_spaces:
        mls = [geometry.ml_degree(space, seed=s).count for s in (101, 202, 303)]
        recs = [geometry.reciprocal_degree(space, seed=s).count for s in (101, 202, 303)]
        rec.check(len(set(mls)) == 1 and len(set(recs)) == 1,
                  f"{label}: counts stable across 3 seeds (ml {mls}, rec {recs})")


def _criterion_n2(seed: int, rec: _Recorder):
    spaces = [("identity-2", LinearSubspace([SymMat.identity(2, RATIONAL)]))]
    for k in (1, 2, 3):
        for s in (0, 1):
            spaces.append((f"n2-k{k}-s{s}", sample_generic_subspace(2, k, s)))
    for label, space in spaces:
        ml = geometry.ml_degree(space, seed=geometry.derive_seed(seed, "n2", label))
        rd = geometry.reciprocal_degree(space, seed=geometry.derive_seed(seed, "n2r", label))
        rec.check(ml.count == 1 and rd.count == 1,
                  f"{label}: ml {ml.count}, rec {rd.count}, expected 1 and 1")
    # span(E11, E12+E21) is the one regular 2x2 space in the corpus outside
    # general position: its inverses fill the hyperplane X11 = 0 while its
    # annihilator span(E22) is parallel to it, so the lone critical point
    # escapes to infinity and the likelihood equations have no solution at
    # all.  Degree 1 survives for the reciprocal variety only; the missing
    # critical point is what its bad / non-maximal certificate detects.
    nc = builtin.nonclosed_2x2()
    ml = geometry.ml_degree(nc, seed=geometry.derive_seed(seed, "n2", "nonclosed"))
    rd = geometry.reciprocal_degree(nc, seed=geometry.derive_seed(seed, "n2r", "nonclosed"))
    rec.check(ml.count == 0 and rd.count == 1,
              f"nonclosed-2x2: ml {ml.count}, rec {rd.count}, expected 0 and 1")


CRITERIA: dict[str, tuple[float | None, object]] = {
    "type-c-net": (30.0, _criterion_type_c),
    "polar-diagonal-net": (30.0, _criterion_polar_diagonal),
    "diagonal-net": (10.0, _criterion_diagonal),
    "genericity-sweep": (300.0, _criterion_genericity),
    "hyperplane-polars": (120.0, _criterion_hyperplanes),
    "tangency-construction": (120.0, _criterion_tangency),
    "eps-blowup": (5.0, _criterion_eps_blowup),
    "badness": (120.0, _criterion_badness),
    "property-suites": (None, _criterion_properties),
    "n2-sanity": (None, _criterion_n2),
}


def run_criterion(name: str, seed: int = 0) -> CriterionResult:
    budget, fn = CRITERIA[name]
    rec = _Recorder()
    t0 = time.perf_counter()
    try:
        fn(seed, rec)
    except Exception as exc:  # a crash is a red result, not a crashed suite
        rec.failures.append(f"exception: {type(exc).__name__}: {exc}")
        rec.details.append(f"FAIL: exception: {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    if budget is not None and elapsed > budget:
        msg = f"budget exceeded: {elapsed:.1f}s > {budget:.0f}s"
        rec.failures.append(msg)
        rec.details.append("FAIL: " + msg)
    return CriterionResult(name=name, passed=not rec.failures, elapsed=elapsed,
                           budget=budget, details=rec.details, failures=rec.failures)


def run_all(seed: int = 0, only=None) -> list[CriterionResult]:
    clear_registry()
    names = list(CRITERIA) if not only else list(only)
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise KeyError(f"unknown criteria: {', '.join(unknown)}; "
                       f"available: {', '.join(CRITERIA)}")
    return [run_criterion(n, seed) for n in names]
