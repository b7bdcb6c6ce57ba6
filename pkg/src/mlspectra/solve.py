"""Total-degree homotopy solver.

Tracks the product-of-degrees start system into the target, classifies path
endpoints, and deduplicates converged points. Paths are independent; with
ML_SPECTRA_THREADS > 1 they run on a thread pool and are collected in path
order, so results match a sequential run exactly.
"""

from __future__ import annotations

import cmath
import json
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import track
from .polysys import PolySystem
from .seeds import derive_seed


class PathFailureError(RuntimeError):
    """More than 20% of paths broke down mid-track (not endpoint classes)."""

    def __init__(self, msg, stats=None):
        super().__init__(msg)
        self.stats = stats


@dataclass
class SolveOptions:
    residual_tol: float = 1e-9
    dedup_tol: float = 1e-6
    max_steps: int = 10000
    newton_tol: float = 1e-9
    dt0: float = 0.05
    dt_min: float = 1e-13
    dt_max: float = 0.2
    infinity: float = 1e8
    rank_tol: float = 1e-8  # used by callers that rank-check candidate matrices
    debug_sink: object = None  # optional file-like for per-path JSON lines


@dataclass(frozen=True)
class TrackedSolution:
    point: tuple
    residual: float
    status: str
    path_id: int
    steps: int
    t: float
    contraction: float
    multiplicity: int = 1


@dataclass
class SolutionSet:
    solutions: list[TrackedSolution]
    bezout_bound: int
    seed: int
    n_paths: int
    n_converged: int
    n_diverged: int
    n_at_infinity: int
    n_singular: int
    suspected_positive_dimensional: bool
    singular_points: list[TrackedSolution] = field(default_factory=list)

    def status_counts(self) -> dict:
        return {
            "converged": self.n_converged,
            "diverged": self.n_diverged,
            "at_infinity": self.n_at_infinity,
            "singular_endpoint": self.n_singular,
        }


def _start_points(degrees: list[int], path_id: int) -> np.ndarray:
    out = np.empty(len(degrees), dtype=np.complex128)
    rem = path_id
    for i, d in enumerate(degrees):
        a = rem % d
        rem //= d
        out[i] = cmath.exp(2j * math.pi * a / d)
    return out


def _thread_count() -> int:
    raw = os.environ.get("ML_SPECTRA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def solve_total_degree(system: PolySystem, seed: int = 0,
                       options: SolveOptions | None = None,
                       debug_sink=None) -> SolutionSet:
    """All isolated solutions of a square system, deduplicated.

    Raises PathFailureError when over 20% of paths fail mid-track, which
    signals an ill-conditioned formulation; callers retry with a new seed.
    """
    options = options or SolveOptions()
    if debug_sink is None:
        debug_sink = options.debug_sink
    system.require_square()
    csys = system.compile()
    degrees = [int(d) for d in csys.degrees]
    total = system.bezout_bound()
    rng = random.Random(derive_seed(seed, "gamma"))
    gamma = cmath.exp(2j * math.pi * rng.random())

    def run_chunk(pids):
        # kernels hold scratch buffers, so each chunk gets its own
        kernel = track.make_kernel(csys.coeffs, csys.exps, csys.offs, csys.degrees)
        out = []
        for pid in pids:
            x0 = _start_points(degrees, pid)
            out.append(kernel.track(gamma, x0, options.residual_tol, options.newton_tol,
                                    options.max_steps, options.dt0, options.dt_min,
                                    options.dt_max, options.infinity))
        return out

    nthreads = min(_thread_count(), total)
    if nthreads > 1:
        chunks = [list(range(total))[i::nthreads] for i in range(nthreads)]
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            per_chunk = list(pool.map(run_chunk, chunks))
        raw = [None] * total
        for pids, results in zip(chunks, per_chunk):
            for pid, r in zip(pids, results):
                raw[pid] = r
    else:
        raw = run_chunk(range(total))

    sols: list[TrackedSolution] = []
    counts = {track.CONVERGED: 0, track.DIVERGED: 0, track.AT_INFINITY: 0, track.SINGULAR: 0}
    for pid, (x, t, status, steps, res, contraction) in enumerate(raw):
        counts[status] += 1
        sol = TrackedSolution(
            point=tuple(complex(v) for v in x),
            residual=float(res),
            status=track.STATUS_NAMES[status],
            path_id=pid,
            steps=int(steps),
            t=float(t),
            contraction=float(contraction),
        )
        sols.append(sol)
        if debug_sink is not None:
            debug_sink.write(json.dumps({
                "path_id": pid,
                "status": sol.status,
                "steps": sol.steps,
                "t": sol.t,
                "residual": None if not math.isfinite(sol.residual) else sol.residual,
            }, sort_keys=True) + "\n")

    failure_rate = counts[track.DIVERGED] / total
    if failure_rate > 0.20:
        raise PathFailureError(
            f"{counts[track.DIVERGED]} of {total} paths failed mid-track",
            stats={track.STATUS_NAMES[k]: v for k, v in counts.items()},
        )

    converged = [s for s in sols if s.status == "converged"]
    reps = _dedup_affine(converged, options.dedup_tol)
    singular = [s for s in sols if s.status == "singular_endpoint"]

    return SolutionSet(
        solutions=reps,
        bezout_bound=total,
        seed=seed,
        n_paths=total,
        n_converged=counts[track.CONVERGED],
        n_diverged=counts[track.DIVERGED],
        n_at_infinity=counts[track.AT_INFINITY],
        n_singular=counts[track.SINGULAR],
        suspected_positive_dimensional=(counts[track.SINGULAR] / total > 0.30),
        singular_points=singular,
    )


def _dedup_affine(sols: list[TrackedSolution], tol: float) -> list[TrackedSolution]:
    """Greedy clustering in the affine chart metric; lowest path_id wins."""
    reps: list[TrackedSolution] = []
    members: list[int] = []
    for s in sorted(sols, key=lambda s: s.path_id):
        placed = False
        for idx, r in enumerate(reps):
            scale = 1.0 + max(
                max(abs(v) for v in s.point), max(abs(v) for v in r.point))
            dist = max(abs(a - b) for a, b in zip(s.point, r.point))
            if dist <= tol * scale:
                members[idx] += 1
                placed = True
                break
        if not placed:
            reps.append(s)
            members.append(1)
    out = []
    for r, mult in zip(reps, members):
        out.append(TrackedSolution(point=r.point, residual=r.residual, status=r.status,
                                   path_id=r.path_id, steps=r.steps, t=r.t,
                                   contraction=r.contraction, multiplicity=mult))
    return out


def angular_distance(u, v) -> float:
    """sin of the angle between complex lines spanned by u and v."""
    u = np.asarray(u, dtype=np.complex128).ravel()
    v = np.asarray(v, dtype=np.complex128).ravel()
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 1.0
    c = abs(np.vdot(u, v)) / (nu * nv)
    return float(math.sqrt(max(0.0, 1.0 - min(1.0, c) ** 2)))


def dedup_projective(points, tol: float = 1e-6):
    """Cluster points of projective space; returns (representatives, multiplicities).

    Representatives keep first-seen order (lowest index wins a cluster).
    """
    reps: list[np.ndarray] = []
    mults: list[int] = []
    for p in points:
        arr = np.asarray(p, dtype=np.complex128).ravel()
        placed = False
        for i, r in enumerate(reps):
            if angular_distance(arr, r) <= tol:
                mults[i] += 1
                placed = True
                break
        if not placed:
            reps.append(arr)
            mults.append(1)
    return reps, mults
