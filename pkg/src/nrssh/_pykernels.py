"""Pure-Python/NumPy versions of the compiled kernels.

Signatures and return conventions match ``_ckernels`` exactly.
"""
import math

import numpy as np

_EPS = np.finfo(float).eps
_CHUNK = 4096


def tql_tridiagonal(diag, offdiag, max_iter=30):
    n = len(diag)
    d = np.array(diag, dtype=float)
    e = np.zeros(n)
    if n > 1:
        e[: n - 1] = np.asarray(offdiag, dtype=float)
    z = np.eye(n)
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n - 1:
            if abs(e[m]) <= _EPS * tst1:
                break
            m += 1
        if m > l:
            it = 0
            while True:
                it += 1
                if it > max_iter:
                    return d, z, l
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                d[l + 2:] -= h
                f += h

                p = d[m]
                c = c2 = c3 = 1.0
                el1 = e[l + 1]
                s = s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    zi = z[:, i].copy()
                    zi1 = z[:, i + 1]
                    z[:, i] = c * zi - s * zi1
                    z[:, i + 1] = s * zi + c * zi1
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= _EPS * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    return d, z, -1


def _coefficients(alpha, beta, omega, t):
    phase = np.outer(omega, t)
    return alpha[:, None] * np.cos(phase) + beta[:, None] * np.sin(phase)


def modal_evaluate(modes, alpha, beta, omega, times):
    modes = np.asarray(modes, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    omega = np.asarray(omega, dtype=float)
    times = np.asarray(times, dtype=float)
    return modes @ _coefficients(alpha, beta, omega, times)


def modal_abs_trapezoid(modes, alpha, beta, omega, t0, t1, n_steps):
    modes = np.asarray(modes, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    omega = np.asarray(omega, dtype=float)
    dt = (t1 - t0) / n_steps
    out = np.zeros(modes.shape[0])
    for start in range(0, n_steps + 1, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, n_steps + 1))
        weight = np.ones(k.size)
        weight[k == 0] = 0.5
        weight[k == n_steps] = 0.5
        volts = modes @ _coefficients(alpha, beta, omega, t0 + k * dt)
        out += np.abs(volts) @ weight
    return out * dt
