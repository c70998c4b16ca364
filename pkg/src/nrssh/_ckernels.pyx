# cython: language_level=3
"""Compiled hot loops: tridiagonal QL iteration and modal superposition.

Every function here mirrors one in ``_pykernels`` with the same signature and
return convention; ``nrssh.kernels`` picks one of the two at import.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, hypot, sin

cnp.import_array()

cdef double EPS = 2.220446049250313e-16


def tql_tridiagonal(diag, offdiag, int max_iter=30):
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    Returns ``(values, vectors, failed)``. ``values`` and the columns of
    ``vectors`` are unsorted; ``failed`` is -1 on success, otherwise the index
    of the eigenvalue whose iteration budget ran out.
    """
    cdef Py_ssize_t n = len(diag)
    cdef cnp.ndarray[double, ndim=1] d = np.array(diag, dtype=np.float64, copy=True)
    cdef cnp.ndarray[double, ndim=1] e = np.zeros(n, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] z = np.eye(n, dtype=np.float64)
    cdef double[:] dv = d
    cdef double[:] ev = e
    cdef double[:, :] zv = z
    cdef Py_ssize_t i, k, l, m
    cdef int it
    cdef double f = 0.0, tst1 = 0.0
    cdef double g, p, r, c, c2, c3, el1, s, s2, h, dl1

    if n > 1:
        e[: n - 1] = np.asarray(offdiag, dtype=np.float64)

    for l in range(n):
        tst1 = max(tst1, fabs(dv[l]) + fabs(ev[l]))
        m = l
        while m < n - 1:
            if fabs(ev[m]) <= EPS * tst1:
                break
            m += 1
        if m > l:
            it = 0
            while True:
                it += 1
                if it > max_iter:
                    return d, z, <int>l
                g = dv[l]
                p = (dv[l + 1] - g) / (2.0 * ev[l])
                r = hypot(p, 1.0)
                if p < 0:
                    r = -r
                dv[l] = ev[l] / (p + r)
                dv[l + 1] = ev[l] * (p + r)
                dl1 = dv[l + 1]
                h = g - dv[l]
                for i in range(l + 2, n):
                    dv[i] -= h
                f += h

                p = dv[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = ev[l + 1]
                s = 0.0
                s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * ev[i]
                    h = c * p
                    r = hypot(p, ev[i])
                    ev[i + 1] = s * r
                    s = ev[i] / r
                    c = p / r
                    p = c * dv[i] - s * g
                    dv[i + 1] = h + s * (c * g + s * dv[i])
                    for k in range(n):
                        h = zv[k, i + 1]
                        zv[k, i + 1] = s * zv[k, i] + c * h
                        zv[k, i] = c * zv[k, i] - s * h
                p = -s * s2 * c3 * el1 * ev[l] / dl1
                ev[l] = s * p
                dv[l] = c * p
                if fabs(ev[l]) <= EPS * tst1:
                    break
        dv[l] = dv[l] + f
        ev[l] = 0.0
    return d, z, -1


def modal_evaluate(modes, alpha, beta, omega, times):
    """``V[:, k] = sum_s modes[:, s] (alpha_s cos w_s t_k + beta_s sin w_s t_k)``."""
    cdef double[:, :] mv = np.ascontiguousarray(modes, dtype=np.float64)
    cdef double[:] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[:] b = np.ascontiguousarray(beta, dtype=np.float64)
    cdef double[:] w = np.ascontiguousarray(omega, dtype=np.float64)
    cdef double[:] t = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t n = mv.shape[0], ns = mv.shape[1], nt = t.shape[0]
    out = np.zeros((n, nt), dtype=np.float64)
    cdef double[:, :] ov = out
    cdef double[:] coef = np.empty(ns, dtype=np.float64)
    cdef Py_ssize_t i, s, k
    cdef double acc
    for k in range(nt):
        for s in range(ns):
            coef[s] = a[s] * cos(w[s] * t[k]) + b[s] * sin(w[s] * t[k])
        for i in range(n):
            acc = 0.0
            for s in range(ns):
                acc += mv[i, s] * coef[s]
            ov[i, k] = acc
    return out


def modal_abs_trapezoid(modes, alpha, beta, omega, double t0, double t1,
                        Py_ssize_t n_steps):
    """Composite-trapezoid integral of ``|V_i(t)|`` over ``[t0, t1]``.

    The grid is uniform with ``n_steps`` intervals; voltages are generated on
    the fly so memory stays O(nodes).
    """
    cdef double[:, :] mv = np.ascontiguousarray(modes, dtype=np.float64)
    cdef double[:] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[:] b = np.ascontiguousarray(beta, dtype=np.float64)
    cdef double[:] w = np.ascontiguousarray(omega, dtype=np.float64)
    cdef Py_ssize_t n = mv.shape[0], ns = mv.shape[1]
    out = np.zeros(n, dtype=np.float64)
    cdef double[:] ov = out
    cdef double[:] coef = np.empty(ns, dtype=np.float64)
    cdef double dt = (t1 - t0) / n_steps
    cdef double t, acc, weight
    cdef Py_ssize_t i, s, k
    for k in range(n_steps + 1):
        t = t0 + k * dt
        weight = 0.5 if (k == 0 or k == n_steps) else 1.0
        for s in range(ns):
            coef[s] = a[s] * cos(w[s] * t) + b[s] * sin(w[s] * t)
        for i in range(n):
            acc = 0.0
            for s in range(ns):
                acc += mv[i, s] * coef[s]
            ov[i] += weight * fabs(acc)
    for i in range(n):
        ov[i] *= dt
    return out
