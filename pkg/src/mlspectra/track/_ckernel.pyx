# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled path tracker. Transcribes the algorithm in _pykernel exactly:
total-degree homotopy, RK4 predictor, 3-step Newton corrector, halving and
doubling step control, identical endpoint classification."""

import numpy as np

BACKEND = "c"

cdef enum:
    ST_CONVERGED = 0
    ST_DIVERGED = 1
    ST_AT_INFINITY = 2
    ST_SINGULAR = 3

CONVERGED = ST_CONVERGED
DIVERGED = ST_DIVERGED
AT_INFINITY = ST_AT_INFINITY
SINGULAR = ST_SINGULAR

cdef extern from "complex.h":
    double cabs "cabs"(double complex) nogil


cdef class Kernel:
    cdef double complex[::1] coeffs
    cdef int[:, ::1] exps
    cdef int[::1] offs
    cdef int[::1] degrees
    cdef int m, neq, maxdeg
    cdef double complex[:, ::1] pw
    cdef double complex[::1] fv, hv, htv, dx, xw, k1, k2, k3, k4, xcur, lu, rhs
    cdef double complex[:, ::1] jf, jh
    cdef int[::1] piv

    def __init__(self, coeffs, exps, offs, degrees):
        self.coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
        self.exps = np.ascontiguousarray(exps, dtype=np.int32)
        self.offs = np.ascontiguousarray(offs, dtype=np.int32)
        self.degrees = np.ascontiguousarray(degrees, dtype=np.int32)
        self.m = self.exps.shape[1]
        self.neq = self.offs.shape[0] - 1
        if self.neq != self.m:
            raise ValueError("tracking kernel needs a square system")
        cdef int md = 1
        if self.exps.shape[0]:
            md = max(md, int(np.max(np.asarray(self.exps))))
        md = max(md, int(np.max(np.asarray(self.degrees))))
        self.maxdeg = md
        self.pw = np.empty((self.m, md + 1), dtype=np.complex128)
        cdef int m = self.m
        self.fv = np.empty(m, dtype=np.complex128)
        self.hv = np.empty(m, dtype=np.complex128)
        self.htv = np.empty(m, dtype=np.complex128)
        self.dx = np.empty(m, dtype=np.complex128)
        self.xw = np.empty(m, dtype=np.complex128)
        self.k1 = np.empty(m, dtype=np.complex128)
        self.k2 = np.empty(m, dtype=np.complex128)
        self.k3 = np.empty(m, dtype=np.complex128)
        self.k4 = np.empty(m, dtype=np.complex128)
        self.xcur = np.empty(m, dtype=np.complex128)
        self.jf = np.empty((m, m), dtype=np.complex128)
        self.jh = np.empty((m, m), dtype=np.complex128)
        self.lu = np.empty(m * m, dtype=np.complex128)
        self.rhs = np.empty(m, dtype=np.complex128)
        self.piv = np.empty(m, dtype=np.int32)

    cdef void _eval_fj(self, double complex[::1] x) nogil:
        cdef int i, j, l, ti, e, p
        cdef double complex c, mono, dterm
        for j in range(self.m):
            self.pw[j, 0] = 1.0
            for p in range(1, self.maxdeg + 1):
                self.pw[j, p] = self.pw[j, p - 1] * x[j]
        for i in range(self.neq):
            self.fv[i] = 0.0
            for j in range(self.m):
                self.jf[i, j] = 0.0
        for i in range(self.neq):
            for ti in range(self.offs[i], self.offs[i + 1]):
                c = self.coeffs[ti]
                mono = c
                for j in range(self.m):
                    mono = mono * self.pw[j, self.exps[ti, j]]
                self.fv[i] = self.fv[i] + mono
                for j in range(self.m):
                    e = self.exps[ti, j]
                    if e:
                        dterm = c * e
                        for l in range(self.m):
                            p = self.exps[ti, l]
                            if l == j:
                                p = p - 1
                            dterm = dterm * self.pw[l, p]
                        self.jf[i, j] = self.jf[i, j] + dterm

    cdef void _homotopy(self, double complex[::1] x, double t, double complex gamma) nogil:
        """Fills hv, jh, htv from the F evaluation plus the start system."""
        cdef int i, j, d, q
        cdef double complex xi, pp, g, jg
        self._eval_fj(x)
        for i in range(self.m):
            xi = x[i]
            d = self.degrees[i]
            pp = 1.0
            for q in range(d - 1):
                pp = pp * xi
            jg = d * pp
            g = pp * xi - 1.0
            self.hv[i] = t * self.fv[i] + (1.0 - t) * gamma * g
            self.htv[i] = self.fv[i] - gamma * g
            for j in range(self.m):
                self.jh[i, j] = t * self.jf[i, j]
            self.jh[i, i] = self.jh[i, i] + (1.0 - t) * gamma * jg

    cdef int _solve(self, double complex[:, ::1] a, double complex[::1] b, double complex[::1] out) nogil:
        """LU with partial pivoting; returns -1 on a (near-)singular matrix."""
        cdef int m = self.m
        cdef int i, j, c, best
        cdef double bv, v
        cdef double complex fac, acc, tmp
        for i in range(m):
            for j in range(m):
                self.lu[i * m + j] = a[i, j]
            out[i] = b[i]
        for c in range(m):
            best = c
            bv = cabs(self.lu[c * m + c])
            for i in range(c + 1, m):
                v = cabs(self.lu[i * m + c])
                if v > bv:
                    bv = v
                    best = i
            if bv < 1e-300 or bv != bv:
                return -1
            if best != c:
                for j in range(m):
                    tmp = self.lu[c * m + j]
                    self.lu[c * m + j] = self.lu[best * m + j]
                    self.lu[best * m + j] = tmp
                tmp = out[c]
                out[c] = out[best]
                out[best] = tmp
            for i in range(c + 1, m):
                fac = self.lu[i * m + c] / self.lu[c * m + c]
                if fac != 0:
                    for j in range(c + 1, m):
                        self.lu[i * m + j] = self.lu[i * m + j] - fac * self.lu[c * m + j]
                    out[i] = out[i] - fac * out[c]
        for c in range(m - 1, -1, -1):
            acc = out[c]
            for j in range(c + 1, m):
                acc = acc - self.lu[c * m + j] * out[j]
            out[c] = acc / self.lu[c * m + c]
        return 0

    cdef int _tangent(self, double complex[::1] x, double t, double complex gamma,
                      double complex[::1] out) nogil:
        cdef int i
        self._homotopy(x, t, gamma)
        for i in range(self.m):
            self.rhs[i] = -self.htv[i]
        if self._solve(self.jh, self.rhs, out) != 0:
            return -1
        for i in range(self.m):
            if out[i] != out[i] or cabs(out[i]) > 1e300:
                return -1
        return 0

    cdef int _newton(self, double complex[::1] x, double t, double complex gamma,
                     double tol, int iters) nogil:
        """Corrects x in place; 0 on success, -1 on failure."""
        cdef int it, i
        cdef double nx, nd
        for it in range(iters):
            self._homotopy(x, t, gamma)
            for i in range(self.m):
                self.rhs[i] = -self.hv[i]
            if self._solve(self.jh, self.rhs, self.dx) != 0:
                return -1
            nx = 0.0
            nd = 0.0
            for i in range(self.m):
                if self.dx[i] != self.dx[i]:
                    return -1
                x[i] = x[i] + self.dx[i]
                if cabs(x[i]) > nx:
                    nx = cabs(x[i])
                if cabs(self.dx[i]) > nd:
                    nd = cabs(self.dx[i])
            if nx > 1e300:
                return -1
            if nd <= tol * (1.0 + nx):
                return 0
        return -1

    cdef double _inf_norm(self, double complex[::1] v) nogil:
        cdef double out = 0.0
        cdef int i
        for i in range(self.m):
            if cabs(v[i]) > out:
                out = cabs(v[i])
        return out

    cdef double _residual(self, double complex[::1] x) nogil:
        cdef double out = 0.0
        cdef int i
        self._eval_fj(x)
        for i in range(self.m):
            if cabs(self.fv[i]) > out:
                out = cabs(self.fv[i])
        return out

    def track(self, gamma, x0, double residual_tol, double newton_tol, int max_steps,
              double dt0, double dt_min, double dt_max, double infinity):
        cdef double complex g = gamma
        cdef int m = self.m
        x_arr = np.ascontiguousarray(x0, dtype=np.complex128).copy()
        cdef double complex[::1] x = x_arr
        cdef double t = 0.0, dt = dt0, h
        cdef int ok_streak = 0, steps = 0, status = -1
        cdef int i, rc
        cdef bint good
        cdef double res, contraction, d1, d2, nd, scale
        cdef int it, ndeltas
        with nogil:
            while t < 1.0:
                if steps >= max_steps:
                    status = ST_DIVERGED
                    break
                steps += 1
                h = dt
                if 1.0 - t < h:
                    h = 1.0 - t
                good = False
                if self._tangent(x, t, g, self.k1) == 0:
                    for i in range(m):
                        self.xw[i] = x[i] + 0.5 * h * self.k1[i]
                    if self._tangent(self.xw, t + 0.5 * h, g, self.k2) == 0:
                        for i in range(m):
                            self.xw[i] = x[i] + 0.5 * h * self.k2[i]
                        if self._tangent(self.xw, t + 0.5 * h, g, self.k3) == 0:
                            for i in range(m):
                                self.xw[i] = x[i] + h * self.k3[i]
                            if self._tangent(self.xw, t + h, g, self.k4) == 0:
                                for i in range(m):
                                    self.xcur[i] = x[i] + (h / 6.0) * (
                                        self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i])
                                    if self.xcur[i] != self.xcur[i]:
                                        break
                                else:
                                    good = self._newton(self.xcur, t + h, g, newton_tol, 3) == 0
                if good:
                    if self._inf_norm(self.xcur) > infinity:
                        for i in range(m):
                            x[i] = self.xcur[i]
                        t = t + h
                        status = ST_AT_INFINITY
                        break
                    for i in range(m):
                        x[i] = self.xcur[i]
                    t = t + h
                    ok_streak += 1
                    if ok_streak >= 5:
                        dt = dt * 2.0
                        if dt > dt_max:
                            dt = dt_max
                        ok_streak = 0
                else:
                    ok_streak = 0
                    dt = dt * 0.5
                    if dt < dt_min:
                        if self._inf_norm(x) > 1e6:
                            status = ST_AT_INFINITY
                        elif t >= 0.99:
                            status = ST_SINGULAR
                        else:
                            status = ST_DIVERGED
                        break
        if status == ST_DIVERGED:
            return x_arr, t, ST_DIVERGED, steps, np.inf, np.inf
        if status == ST_AT_INFINITY:
            return x_arr, t, ST_AT_INFINITY, steps, np.inf, np.inf
        if status == ST_SINGULAR:
            res = self._residual(x)
            return x_arr, t, ST_SINGULAR, steps, res, np.inf
        # t reached 1: final Newton polish on F itself
        d1 = -1.0
        d2 = -1.0
        ndeltas = 0
        status = -1
        with nogil:
            for it in range(10):
                self._eval_fj(x)
                for i in range(m):
                    self.rhs[i] = -self.fv[i]
                if self._solve(self.jf, self.rhs, self.dx) != 0:
                    break
                nd = 0.0
                for i in range(m):
                    if self.dx[i] != self.dx[i]:
                        nd = -1.0
                        break
                if nd < 0.0:
                    break
                for i in range(m):
                    x[i] = x[i] + self.dx[i]
                    if cabs(self.dx[i]) > nd:
                        nd = cabs(self.dx[i])
                if ndeltas == 0:
                    d1 = nd
                    ndeltas = 1
                elif ndeltas == 1:
                    d2 = nd
                    ndeltas = 2
                if self._inf_norm(x) > infinity:
                    status = ST_AT_INFINITY
                    break
                if nd <= 1e-15 * (1.0 + self._inf_norm(x)):
                    break
        if status == ST_AT_INFINITY:
            return x_arr, 1.0, ST_AT_INFINITY, steps, np.inf, np.inf
        res = self._residual(x)
        scale = 1.0 + self._inf_norm(x)
        if ndeltas == 0 or d1 <= 1e-14 * scale:
            contraction = 0.0
        elif ndeltas == 1:
            contraction = 0.0
        else:
            contraction = d2 / d1
        if res <= residual_tol and contraction < 0.5:
            return x_arr, 1.0, ST_CONVERGED, steps, res, contraction
        return x_arr, 1.0, ST_SINGULAR, steps, res, contraction


def make_kernel(coeffs, exps, offs, degrees):
    return Kernel(coeffs, exps, offs, degrees)
