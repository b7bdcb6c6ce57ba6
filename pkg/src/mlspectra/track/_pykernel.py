"""Pure-Python path tracker (numpy). Reference implementation.

Total-degree homotopy H(x,t) = t F(x) + (1-t) gamma G(x) with start system
G_i = x_i^{d_i} - 1, RK4 predictor on the Davidenko ODE and a short Newton
corrector per step. Step size halves on corrector failure and doubles after
five consecutive successes. The compiled kernel transcribes the same
algorithm; both must classify endpoints identically.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

CONVERGED = 0
DIVERGED = 1
AT_INFINITY = 2
SINGULAR = 3


class Kernel:
    def __init__(self, coeffs, exps, offs, degrees):
        self.coeffs = np.asarray(coeffs, dtype=np.complex128)
        self.exps = np.asarray(exps, dtype=np.int32)
        self.offs = np.asarray(offs, dtype=np.int32)
        self.degrees = np.asarray(degrees, dtype=np.int32)
        self.m = int(self.exps.shape[1])
        self.neq = len(self.offs) - 1
        self.maxdeg = int(self.exps.max()) if self.exps.size else 0
        # per-variable decremented exponent tables for Jacobian terms
        self._dec = []
        self._efac = []
        for j in range(self.m):
            d = self.exps.copy()
            fac = d[:, j].astype(np.complex128)
            d[:, j] = np.maximum(d[:, j] - 1, 0)
            self._dec.append(d)
            self._efac.append(fac)
        self._cols = np.arange(self.m)

    def _powers(self, x):
        pw = np.ones((self.m, self.maxdeg + 1), dtype=np.complex128)
        for p in range(1, self.maxdeg + 1):
            pw[:, p] = pw[:, p - 1] * x
        return pw

    def eval_fj(self, x):
        pw = self._powers(x)
        mono = np.prod(pw[self._cols[None, :], self.exps], axis=1)
        vals = self.coeffs * mono
        f = np.add.reduceat(vals, self.offs[:-1])
        jac = np.empty((self.neq, self.m), dtype=np.complex128)
        for j in range(self.m):
            dmono = np.prod(pw[self._cols[None, :], self._dec[j]], axis=1)
            jac[:, j] = np.add.reduceat(self.coeffs * self._efac[j] * dmono, self.offs[:-1])
        return f, jac

    def eval_f(self, x):
        pw = self._powers(x)
        mono = np.prod(pw[self._cols[None, :], self.exps], axis=1)
        return np.add.reduceat(self.coeffs * mono, self.offs[:-1])

    def _start_vals(self, x):
        g = x ** self.degrees - 1.0
        jg = self.degrees * x ** (self.degrees - 1)
        return g, jg

    def _homotopy(self, x, t, gamma):
        f, jf = self.eval_fj(x)
        g, jg = self._start_vals(x)
        h = t * f + (1.0 - t) * gamma * g
        jh = t * jf
        jh[np.arange(self.m), np.arange(self.m)] += (1.0 - t) * gamma * jg
        ht = f - gamma * g
        return h, jh, ht

    def _tangent(self, x, t, gamma):
        _, jh, ht = self._homotopy(x, t, gamma)
        try:
            dx = np.linalg.solve(jh, -ht)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(dx)):
            return None
        return dx

    def _newton(self, x, t, gamma, tol, iters):
        for _ in range(iters):
            h, jh, _ = self._homotopy(x, t, gamma)
            try:
                dx = np.linalg.solve(jh, -h)
            except np.linalg.LinAlgError:
                return False, x
            if not np.all(np.isfinite(dx)):
                return False, x
            x = x + dx
            if np.max(np.abs(x)) > 1e300:
                return False, x
            if np.max(np.abs(dx)) <= tol * (1.0 + np.max(np.abs(x))):
                return True, x
        return False, x

    def track(self, gamma, x0, residual_tol, newton_tol, max_steps,
              dt0, dt_min, dt_max, infinity):
        x = np.asarray(x0, dtype=np.complex128).copy()
        t = 0.0
        dt = dt0
        ok_streak = 0
        steps = 0
        while t < 1.0:
            if steps >= max_steps:
                return x, t, DIVERGED, steps, np.inf, np.inf
            steps += 1
            h = min(dt, 1.0 - t)
            stage_fail = False
            k1 = self._tangent(x, t, gamma)
            if k1 is None:
                stage_fail = True
            else:
                k2 = self._tangent(x + 0.5 * h * k1, t + 0.5 * h, gamma)
                k3 = None if k2 is None else self._tangent(x + 0.5 * h * k2, t + 0.5 * h, gamma)
                k4 = None if k3 is None else self._tangent(x + h * k3, t + h, gamma)
                if k4 is None:
                    stage_fail = True
            if not stage_fail:
                xp = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                if np.all(np.isfinite(xp)):
                    good, xc = self._newton(xp, t + h, gamma, newton_tol, 3)
                else:
                    good, xc = False, x
            else:
                good, xc = False, x
            if good:
                if np.max(np.abs(xc)) > infinity:
                    return xc, t + h, AT_INFINITY, steps, np.inf, np.inf
                x = xc
                t = t + h
                ok_streak += 1
                if ok_streak >= 5:
                    dt = min(dt * 2.0, dt_max)
                    ok_streak = 0
            else:
                ok_streak = 0
                dt = dt * 0.5
                if dt < dt_min:
                    if np.max(np.abs(x)) > 1e6:
                        return x, t, AT_INFINITY, steps, np.inf, np.inf
                    if t >= 0.99:
                        res = float(np.max(np.abs(self.eval_f(x))))
                        return x, t, SINGULAR, steps, res, np.inf
                    return x, t, DIVERGED, steps, np.inf, np.inf
        return self._polish(x, steps, residual_tol, infinity)

    def _polish(self, x, steps, residual_tol, infinity):
        deltas = []
        for it in range(10):
            f, jf = self.eval_fj(x)
            try:
                dx = np.linalg.solve(jf, -f)
            except np.linalg.LinAlgError:
                break
            if not np.all(np.isfinite(dx)):
                break
            x = x + dx
            if len(deltas) < 2:
                deltas.append(float(np.max(np.abs(dx))))
            if np.max(np.abs(x)) > infinity:
                return x, 1.0, AT_INFINITY, steps, np.inf, np.inf
            if float(np.max(np.abs(dx))) <= 1e-15 * (1.0 + np.max(np.abs(x))):
                break
        res = float(np.max(np.abs(self.eval_f(x))))
        scale = 1.0 + float(np.max(np.abs(x)))
        if not deltas or deltas[0] <= 1e-14 * scale:
            contraction = 0.0
        elif len(deltas) == 1:
            contraction = 0.0
        else:
            contraction = deltas[1] / deltas[0]
        if res <= residual_tol and contraction < 0.5:
            return x, 1.0, CONVERGED, steps, res, contraction
        return x, 1.0, SINGULAR, steps, res, contraction


def make_kernel(coeffs, exps, offs, degrees) -> Kernel:
    return Kernel(coeffs, exps, offs, degrees)
