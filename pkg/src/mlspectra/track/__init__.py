"""Path-tracking kernel selection.

The compiled kernel is used when present; ML_SPECTRA_BACKEND=python or =c
forces a choice. Both kernels implement the same algorithm and classify
endpoints identically; the compiled one is roughly two orders of magnitude
faster (see bench/benchmark_tracker.py).
"""

from __future__ import annotations

import importlib
import os

from . import _pykernel

CONVERGED = _pykernel.CONVERGED
DIVERGED = _pykernel.DIVERGED
AT_INFINITY = _pykernel.AT_INFINITY
SINGULAR = _pykernel.SINGULAR

STATUS_NAMES = {
    CONVERGED: "converged",
    DIVERGED: "diverged",
    AT_INFINITY: "at_infinity",
    SINGULAR: "singular_endpoint",
}

_forced = os.environ.get("ML_SPECTRA_BACKEND", "").strip().lower()

_ckernel = None
if _forced != "python":
    try:
        _ckernel = importlib.import_module("._ckernel", __name__)
    except ImportError:
        _ckernel = None
        if _forced == "c":
            raise ImportError("ML_SPECTRA_BACKEND=c but the compiled kernel is unavailable")

if _ckernel is not None:
    _impl = _ckernel
else:
    _impl = _pykernel

BACKEND = _impl.BACKEND


def make_kernel(coeffs, exps, offs, degrees):
    return _impl.make_kernel(coeffs, exps, offs, degrees)


def kernel_backends():
    """Names of importable kernels, compiled one first if present."""
    out = []
    if _ckernel is not None:
        out.append("c")
    out.append("python")
    return out


def make_kernel_for(backend: str, coeffs, exps, offs, degrees):
    if backend == "python":
        return _pykernel.make_kernel(coeffs, exps, offs, degrees)
    if backend == "c":
        if _ckernel is None:
            raise ValueError("compiled kernel unavailable")
        return _ckernel.make_kernel(coeffs, exps, offs, degrees)
    raise ValueError(f"unknown backend {backend!r}")
