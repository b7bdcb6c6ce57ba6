"""Time the compiled tracking kernel against the pure-Python one.

Both kernels receive identical start points and the same gamma, so the
numbers compare the per-step arithmetic alone, not path luck. Run as

    python bench/benchmark_tracker.py [--repeats N]
"""

import argparse
import cmath
import math
import time

from mlspectra import geometry, track
from mlspectra.poly import Poly
from mlspectra.polysys import PolySystem
from mlspectra.subspace import sample_generic_subspace
from mlspectra.symmat import SymMat


def toy_system() -> PolySystem:
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    return PolySystem([x * x + y * y - 5.0, x * y - 2.0], 2)


def critical(n: int, k: int) -> PolySystem:
    space = sample_generic_subspace(n, k, 0)
    rows = [[7 if i == j else 1 for j in range(n)] for i in range(n)]
    return geometry.critical_system(space, SymMat.from_rows(rows, "rational"))


def start_points(degrees, pid):
    pts = []
    rem = pid
    for d in degrees:
        j = rem % d
        rem //= d
        pts.append(cmath.exp(2j * math.pi * (j + 0.5) / d))
    return pts


def time_backend(backend: str, csys, degrees, repeats: int) -> float:
    total = 1
    for d in degrees:
        total *= d
    gamma = cmath.exp(0.7j)
    best = float("inf")
    for _ in range(repeats):
        kernel = track.make_kernel_for(backend, csys.coeffs, csys.exps,
                                       csys.offs, csys.degrees)
        t0 = time.perf_counter()
        for pid in range(total):
            kernel.track(gamma, start_points(degrees, pid),
                         1e-9, 1e-9, 10000, 0.05, 1e-13, 0.2, 1e8)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    backends = track.kernel_backends()
    if "c" not in backends:
        print("compiled kernel not built; timing python only")

    cases = [
        ("toy 2x2 (deg 2,2)", toy_system()),
        ("critical n=3 k=2", critical(3, 2)),
        ("critical n=3 k=4", critical(3, 4)),
        ("critical n=4 k=2", critical(4, 2)),
    ]
    rows = []
    for label, system in cases:
        csys = system.compile()
        degrees = [int(d) for d in csys.degrees]
        paths = system.bezout_bound()
        times = {}
        for b in backends:
            times[b] = time_backend(b, csys, degrees, args.repeats)
        row = {"label": label, "paths": paths, **times}
        if "c" in times:
            row["speedup"] = times["python"] / times["c"]
        rows.append(row)

    hdr = f"{'system':<22}{'paths':>6}{'python':>12}"
    if "c" in backends:
        hdr += f"{'c':>12}{'speedup':>9}"
    print(hdr)
    for r in rows:
        line = f"{r['label']:<22}{r['paths']:>6}{r['python']:>11.3f}s"
        if "c" in r:
            line += f"{r['c']:>11.3f}s{r['speedup']:>8.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
