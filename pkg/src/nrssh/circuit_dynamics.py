"""Time-domain solution of the lossless circuit ``(script_H - Lambda) V'' = V``.

Times are handled as the dimensionless ``omega0 * t`` throughout; voltages
are in volts, derivatives in V/s. In these units the equation reads
``K d2V/dtau2 = V`` with ``K = H/nu - lambda I``.
"""
from dataclasses import dataclass
import math
from typing import NamedTuple

import numpy as np

from . import kernels, oracle
from .circuit import CircuitDesign, circuit_matrices
from .eigen import eigensystem
from .errors import NumericalError, ValidationError
from .lattice import ModelParams, build_similarity

DEFAULT_QUADRATURE_STEP = 1e-3
MIN_WINDOW_SAMPLES = 64


def prepare_initial_state(d: CircuitDesign, v0: float):
    """Switch-prepared state: ``V_A1(0) = v0``, every other node and all derivatives 0."""
    dim = 2 * d.n_cells - 1
    V = np.zeros(dim)
    V[0] = v0
    return V, np.zeros(dim)


@dataclass(frozen=True)
class ModalSolution:
    """Normal-mode expansion ``V(t) = sum_s (alpha_s cos w_s t + beta_s sin w_s t) M[:, s]``.

    ``omegas`` are in rad/s; ``eps`` are the eigenvalues of ``script_H``.
    """

    eigvecs: np.ndarray
    eigvecs_inv: np.ndarray
    eps: np.ndarray
    omegas: np.ndarray
    omega0: float
    alphas: np.ndarray
    betas: np.ndarray
    lambda_LC: float

    @property
    def reduced_omegas(self):
        """``omega_s / omega0``."""
        return self.omegas / self.omega0

    def residual(self, script_H: np.ndarray) -> float:
        """``max |M^-1 script_H M - (Lambda - Omega^-2)|`` relative to ``lambda L C``."""
        lhs = self.eigvecs_inv @ script_H @ self.eigvecs
        rhs = np.diag(self.lambda_LC - 1.0 / self.omegas ** 2)
        return float(np.max(np.abs(lhs - rhs)) / self.lambda_LC)


def modal_solve(d: CircuitDesign, p: ModelParams = None, V0=None, Vdot0=None) -> ModalSolution:
    """Expansion coefficients for the given initial voltages and their rates.

    The mode basis is ``M = S Phi`` from the lattice eigensystem, so
    ``M^-1 = Phi^T S^-1`` without a matrix inversion.
    """
    p = d.params if p is None else p
    if p != d.params:
        raise ValidationError("design was synthesized for different parameters")
    dim = p.dim
    V0 = np.zeros(dim) if V0 is None else np.asarray(V0, dtype=float)
    Vdot0 = np.zeros(dim) if Vdot0 is None else np.asarray(Vdot0, dtype=float)
    if V0.shape != (dim,) or Vdot0.shape != (dim,):
        raise ValidationError(f"initial vectors must have shape ({dim},)")
    es = eigensystem(p)
    LC = d.ref_L * d.ref_C
    eps = (LC / p.nu) * es.energies
    gap = d.lam * LC - eps
    if np.any(gap <= 0):
        s = int(np.flatnonzero(gap <= 0)[0])
        raise NumericalError(f"mode {s} has lambda*L*C - eps <= 0: no real frequency")
    omegas = 1.0 / np.sqrt(gap)
    M = np.array(es.right_vectors)
    Minv = np.array(es.left_vectors)
    return ModalSolution(
        eigvecs=M, eigvecs_inv=Minv, eps=eps, omegas=omegas, omega0=d.omega0,
        alphas=Minv @ V0, betas=(Minv @ Vdot0) / omegas, lambda_LC=d.lam * LC,
    )


@dataclass(frozen=True)
class CircuitTrajectory:
    """Node voltages ``voltages[k, i]`` at ``times[k]`` (units of ``omega0 t``)."""

    times: np.ndarray
    voltages: np.ndarray
    omega0: float
    node_names: tuple = ()


def evaluate(ms: ModalSolution, times) -> CircuitTrajectory:
    times = np.atleast_1d(np.asarray(times, dtype=float))
    V = kernels.modal_evaluate(ms.eigvecs, ms.alphas, ms.betas, ms.reduced_omegas, times)
    return CircuitTrajectory(times=times, voltages=np.asarray(V).T, omega0=ms.omega0)


def first_order_generator(d: CircuitDesign, p: ModelParams = None, similar: bool = False):
    """Block generator ``[[0, I], [K^-1, 0]]`` of ``(V, dV/dtau)``.

    With ``similar=True`` the symmetric ``S^-1 script_H S`` replaces
    ``script_H``.
    """
    p = d.params if p is None else p
    cm = circuit_matrices(d, p)
    LC = d.ref_L * d.ref_C
    H = cm.script_H / LC
    if similar:
        s = build_similarity(p)
        H = H * s[None, :] / s[:, None]
    K = H - cm.Lambda / LC
    dim = K.shape[0]
    try:
        Kinv = np.linalg.solve(K, np.eye(dim))
    except np.linalg.LinAlgError as exc:
        raise NumericalError("script_H - Lambda is singular") from exc
    G = np.zeros((2 * dim, 2 * dim))
    G[:dim, dim:] = np.eye(dim)
    G[dim:, :dim] = Kinv
    return G


def first_order_propagate(d: CircuitDesign, p: ModelParams, V0, Vdot0, t: float):
    """``(V(t), dV/dt(t))`` from the block matrix exponential; ``t`` in ``omega0 t``."""
    G = first_order_generator(d, p)
    y0 = np.concatenate([np.asarray(V0, dtype=float), np.asarray(Vdot0, dtype=float) / d.omega0])
    y = oracle.expm(G * t) @ y0
    dim = G.shape[0] // 2
    return y[:dim], y[dim:] * d.omega0


def averaged_voltages(ms: ModalSolution, t: float, step: float = DEFAULT_QUADRATURE_STEP):
    """``(2/t) * int_{t/2}^{t} |V_i(tau)| dtau`` by composite trapezoid with spacing ``step``."""
    if t <= 0:
        raise ValidationError(f"averaging time must be positive, got {t}")
    n_steps = int(round(0.5 * t / step))
    if n_steps < MIN_WINDOW_SAMPLES:
        raise NumericalError(
            f"window [t/2, t] = [{t / 2}, {t}] holds {n_steps} steps of {step}; "
            f"need at least {MIN_WINDOW_SAMPLES}")
    integral = kernels.modal_abs_trapezoid(
        ms.eigvecs, ms.alphas, ms.betas, ms.reduced_omegas, 0.5 * t, t, n_steps)
    return (2.0 / t) * np.asarray(integral)


def trajectory_averaged_voltages(traj: CircuitTrajectory, t: float):
    """Window average computed from the samples stored in a trajectory."""
    lo = 0.5 * t
    tol = 1e-9 * max(1.0, abs(t))
    mask = (traj.times >= lo - tol) & (traj.times <= t + tol)
    tau = traj.times[mask]
    if tau.size < MIN_WINDOW_SAMPLES + 1:
        raise NumericalError(
            f"trajectory has {tau.size} samples in [{lo}, {t}]; need {MIN_WINDOW_SAMPLES + 1}")
    if abs(tau[0] - lo) > tol or abs(tau[-1] - t) > tol:
        raise NumericalError("trajectory does not cover the averaging window [t/2, t]")
    return (2.0 / t) * np.trapezoid(np.abs(traj.voltages[mask]), tau, axis=0)


def aipr_from_profile(vbar) -> float:
    """``sum vbar^4 / (sum vbar^2)^2``: 1 on one node, ``1/n`` when uniform."""
    vbar = np.asarray(vbar, dtype=float)
    den = np.sum(vbar ** 2)
    if den == 0:
        raise NumericalError("averaged voltage profile is identically zero; aIPR undefined")
    return float(np.sum(vbar ** 4) / den ** 2)


def aipr(traj: CircuitTrajectory, t: float) -> float:
    return aipr_from_profile(trajectory_averaged_voltages(traj, t))


class AiprResult(NamedTuple):
    aipr: float
    profile: np.ndarray
    step: float
    halved_delta: float


def switch_aipr(d: CircuitDesign, v0: float = 1.0, t: float = 100.0,
                step: float = DEFAULT_QUADRATURE_STEP) -> AiprResult:
    """aIPR of the switch-prepared state, plus the change under step halving."""
    V0, Vdot0 = prepare_initial_state(d, v0)
    ms = modal_solve(d, d.params, V0, Vdot0)
    profile = averaged_voltages(ms, t, step)
    value = aipr_from_profile(profile)
    finer = aipr_from_profile(averaged_voltages(ms, t, step / 2))
    return AiprResult(aipr=value, profile=profile, step=step, halved_delta=abs(finer - value))


def bound(ms: ModalSolution) -> float:
    """Upper bound ``sum_s (|alpha_s| + |beta_s|) ||M[:, s]||_inf`` on ``||V(t)||_inf``."""
    return float(np.sum((np.abs(ms.alphas) + np.abs(ms.betas)) * np.abs(ms.eigvecs).max(axis=0)))


def realizable_frequencies(d: CircuitDesign) -> bool:
    es = eigensystem(d.params)
    LC = d.ref_L * d.ref_C
    return bool(np.all(d.lam * LC - (LC / d.params.nu) * es.energies > 0)) and math.isfinite(d.lam)
