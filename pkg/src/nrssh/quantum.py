"""Spectral time evolution ``psi(t) = S Phi exp(-i E t) Phi^T S^-1 psi(0)`` (hbar = 1)."""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .eigen import EigenSystem, eigensystem
from .errors import ValidationError
from .lattice import ModelParams

DEFAULT_T_END = 40.0
DEFAULT_N_TIMES = 801


def default_times():
    """Uniform grid of 801 points on ``nu t in [0, 40]``."""
    return np.linspace(0.0, DEFAULT_T_END, DEFAULT_N_TIMES)


def left_end_state(p: ModelParams) -> np.ndarray:
    """Initial state with unit amplitude on the left-most site."""
    psi = np.zeros(p.dim, dtype=complex)
    psi[0] = 1.0
    return psi


@dataclass(frozen=True)
class QuantumTrajectory:
    """Sampled solution of the Schrodinger equation.

    ``states[k]`` is ``psi(times[k])``; ``intensities[k, i]`` is
    ``|psi_i(t_k)|^2 / |psi_1(0)|^2``. When ``psi_1(0) = 0`` the reference
    falls back to ``||psi(0)||^2`` and ``intensity_reference`` says so.
    """

    params: ModelParams
    times: np.ndarray
    states: np.ndarray
    intensities: np.ndarray
    intensity_reference: str = "first_site"
    metadata: dict = field(default_factory=dict)


def _check_state(p, psi0):
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (p.dim,):
        raise ValidationError(f"initial state must have shape ({p.dim},), got {psi0.shape}")
    return psi0


def _check_times(times):
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if times.ndim != 1 or times.size == 0:
        raise ValidationError("times must be a nonempty 1-D sequence")
    if times[0] != 0.0:
        raise ValidationError(f"times must start at 0, got {times[0]}")
    if np.any(np.diff(times) <= 0):
        raise ValidationError("times must be strictly ascending")
    return times


def propagate(es: EigenSystem, psi0, times) -> np.ndarray:
    """Return ``psi(t)`` for every ``t`` in ``times`` as a ``(T, d)`` array.

    No ordering constraint on ``times``; this is the raw propagator used by
    ``evolve``.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    s = es.similarity
    phi = es.hermitian_vectors
    coeffs = phi.T @ (np.asarray(psi0, dtype=complex) / s)
    phases = np.exp(-1j * np.outer(times, es.energies))
    return ((phases * coeffs) @ phi.T) * s


def evolve(p: ModelParams, psi0, times=None, es: EigenSystem = None) -> QuantumTrajectory:
    psi0 = _check_state(p, psi0)
    times = default_times() if times is None else _check_times(times)
    if es is None:
        es = eigensystem(p)
    states = propagate(es, psi0, times)
    states[0] = psi0
    ref = abs(psi0[0]) ** 2
    reference = "first_site"
    if ref == 0:
        ref = float(np.vdot(psi0, psi0).real)
        reference = "initial_norm"
        if ref == 0:
            raise ValidationError("initial state must be nonzero")
    metadata = {
        "params": p.as_dict(),
        "grid": {"t_start": float(times[0]), "t_end": float(times[-1]), "n_times": int(times.size)},
        "skin_direction": p.skin_direction,
        "right_skin": p.skin_direction == "right",
    }
    return QuantumTrajectory(
        params=p,
        times=times,
        states=states,
        intensities=np.abs(states) ** 2 / ref,
        intensity_reference=reference,
        metadata=metadata,
    )


class ThreeSteps(NamedTuple):
    scaled: np.ndarray
    evolved: np.ndarray
    rescaled: np.ndarray


def three_step_decomposition(p: ModelParams, psi0, t: float, es: EigenSystem = None) -> ThreeSteps:
    """Split one propagation into ``S^-1`` scaling, symmetric evolution, ``S`` rescaling."""
    psi0 = _check_state(p, psi0)
    if es is None:
        es = eigensystem(p)
    s = es.similarity
    phi = es.hermitian_vectors
    scaled = psi0 / s
    evolved = phi @ (np.exp(-1j * es.energies * t) * (phi.T @ scaled))
    return ThreeSteps(scaled=scaled, evolved=evolved, rescaled=s * evolved)


def end_survival(traj: QuantumTrajectory) -> np.ndarray:
    """Relative intensity on the left-most site at each sampled time."""
    if traj.intensities.shape[0] == 0:
        raise ValidationError("empty trajectory")
    return traj.intensities[:, 0].copy()


def end_fraction(traj: QuantumTrajectory) -> np.ndarray:
    """Share of the instantaneous total intensity sitting on the left-most site."""
    total = traj.intensities.sum(axis=1)
    return traj.intensities[:, 0] / total
