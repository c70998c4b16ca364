"""Brute-force reference solvers.

Dense matrix exponential, cyclic Jacobi eigensolver and classic RK4. Nothing
here touches the tridiagonal kernels or the spectral propagators, so these
routines can cross-check them.
"""
import math

import numpy as np

from .errors import NumericalError, ValidationError

MAX_DIM = 128
_TAYLOR_DEGREE = 18
_THETA = 0.5


def _as_square(A, name="A"):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {A.shape}")
    if A.shape[0] > MAX_DIM:
        raise ValidationError(f"{name} has dimension {A.shape[0]} > {MAX_DIM}")
    if not np.all(np.isfinite(A)):
        raise ValidationError(f"{name} has non-finite entries")
    return A


def expm(A):
    """Matrix exponential by scaling and squaring of a degree-18 Taylor polynomial.

    ``A`` is scaled by ``2^-s`` until its 1-norm is at most 1/2, where the
    truncation error is below 1e-22, then squared back ``s`` times.
    """
    A = _as_square(A)
    dtype = np.result_type(A.dtype, np.float64)
    A = A.astype(dtype)
    n = A.shape[0]
    norm = np.abs(A).sum(axis=0).max() if n else 0.0
    s = max(0, int(math.ceil(math.log2(norm / _THETA)))) if norm > _THETA else 0
    X = A / (2.0 ** s)
    eye = np.eye(n, dtype=dtype)
    E = eye.copy()
    for k in range(_TAYLOR_DEGREE, 0, -1):
        E = eye + (X @ E) / k
    for _ in range(s):
        E = E @ E
    return E


def dense_eig_sym(A, tol=1e-14, max_sweeps=100):
    """Eigenpairs of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ascending eigenvalues and orthonormal eigenvector columns.
    """
    A = np.array(_as_square(A), dtype=float)
    if np.max(np.abs(A - A.T), initial=0.0) > 1e-12 * max(1.0, np.abs(A).max(initial=0.0)):
        raise ValidationError("matrix is not symmetric to 1e-12")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    V = np.eye(n)
    scale = np.sqrt(np.sum(A ** 2))
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2))
        if off <= tol * scale or off == 0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e100:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap = A[p, :].copy()
                aq = A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise NumericalError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    values = np.diag(A).copy()
    order = np.argsort(values, kind="stable")
    return values[order], V[:, order]


def rk4_second_order(coeff, V0, Vdot0, t_end, dt, record_every=1):
    """Integrate ``coeff @ V'' = V`` with classic fourth-order Runge-Kutta.

    The system is advanced in first-order form ``y = (V, V')``. Returns
    ``(times, V, Vdot)`` sampled every ``record_every`` steps, always
    including ``t = 0`` and ``t_end``.
    """
    coeff = np.asarray(_as_square(coeff, "coeff"), dtype=float)
    if dt <= 0:
        raise ValidationError(f"dt must be positive, got {dt}")
    n_steps = int(round(t_end / dt))
    if n_steps < 1 or abs(n_steps * dt - t_end) > 1e-9 * max(1.0, t_end):
        raise ValidationError(f"t_end={t_end} is not a whole number of steps dt={dt}")
    if np.linalg.cond(coeff) > 1e14:
        raise NumericalError("coefficient matrix is singular")
    A = np.linalg.solve(coeff, np.eye(coeff.shape[0]))
    dim = coeff.shape[0]
    v = np.array(V0, dtype=float)
    w = np.array(Vdot0, dtype=float)
    record = [0]
    Vs = [v.copy()]
    Ws = [w.copy()]
    h = dt
    for k in range(1, n_steps + 1):
        k1v, k1w = w, A @ v
        v2, w2 = v + 0.5 * h * k1v, w + 0.5 * h * k1w
        k2v, k2w = w2, A @ v2
        v3, w3 = v + 0.5 * h * k2v, w + 0.5 * h * k2w
        k3v, k3w = w3, A @ v3
        v4, w4 = v + h * k3v, w + h * k3w
        k4v, k4w = w4, A @ v4
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        w = w + (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        if k % record_every == 0 or k == n_steps:
            record.append(k)
            Vs.append(v)
            Ws.append(w)
    times = np.asarray(record, dtype=float) * dt
    return times, np.array(Vs).reshape(-1, dim), np.array(Ws).reshape(-1, dim)
