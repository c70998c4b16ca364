"""Biorthogonal eigensystem of the nonreciprocal Hamiltonian.

``H`` is diagonalized through its symmetric similar matrix ``S^-1 H S``:
with orthonormal eigenvectors ``phi_s`` of the latter, the right and left
eigenvectors of ``H`` are ``S phi_s`` and ``phi_s^T S^-1``. They are never
normalized independently, so ``left @ right`` is the identity by construction.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConvergenceError, ValidationError
from .lattice import ModelParams, build_hermitian_counterpart, build_similarity

_SIGN_TOL = 1e-10


def _fix_signs(vectors):
    # first component above the tolerance is made positive
    scale = np.abs(vectors).max(axis=0)
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        k = np.flatnonzero(np.abs(col) > _SIGN_TOL * scale[j])[0]
        if col[k] < 0:
            vectors[:, j] = -col
    return vectors


def eigh_tridiagonal(diag, offdiag, max_iter=30):
    """All eigenpairs of a real symmetric tridiagonal matrix.

    Parameters
    ----------
    diag : array_like, shape (n,)
    offdiag : array_like, shape (n-1,)
    max_iter : int
        QL iterations allowed per eigenvalue.

    Returns
    -------
    values : ndarray, ascending
    vectors : ndarray, orthonormal columns, first significant component positive

    Raises
    ------
    ConvergenceError
        If an eigenvalue fails to converge within ``max_iter`` sweeps.
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    n = diag.size
    if n == 0:
        raise ValidationError("empty matrix")
    if offdiag.size != n - 1:
        raise ValidationError(f"offdiag must have length {n - 1}, got {offdiag.size}")
    values, vectors, failed = kernels.tql_tridiagonal(diag, offdiag, max_iter)
    if failed >= 0:
        raise ConvergenceError(
            f"QL iteration did not converge for eigenvalue {failed} "
            f"within {max_iter} sweeps", index=failed)
    order = np.argsort(values, kind="stable")
    return values[order], _fix_signs(np.array(vectors[:, order]))


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues with paired right/left eigenvectors of ``H``.

    Attributes
    ----------
    energies : (d,) ascending real energies
    right_vectors : (d, d), column ``s`` is the right eigenvector of ``energies[s]``
    left_vectors : (d, d), row ``s`` is the matching left eigenvector
    hermitian_vectors : (d, d), orthonormal eigenvectors of the symmetric similar matrix
    similarity : (d,), diagonal of ``S``
    """

    params: ModelParams
    energies: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    hermitian_vectors: np.ndarray
    similarity: np.ndarray

    @property
    def dim(self):
        return self.energies.size

    def zero_mode_index(self) -> int:
        return int(np.argmin(np.abs(self.energies)))


def eigensystem(p: ModelParams) -> EigenSystem:
    h = build_hermitian_counterpart(p)
    energies, phi = eigh_tridiagonal(h.diag, h.upper)
    s = build_similarity(p)
    return EigenSystem(
        params=p,
        energies=_frozen(energies),
        right_vectors=_frozen(s[:, None] * phi),
        left_vectors=_frozen(phi.T / s[None, :]),
        hermitian_vectors=_frozen(phi),
        similarity=_frozen(s),
    )


def initial_state_weights(es: EigenSystem, psi0) -> np.ndarray:
    """Overlap weights ``w_s = |l_s psi0| / sqrt(sum_s |l_s psi0|^2)``."""
    psi0 = np.asarray(psi0)
    if psi0.shape != (es.dim,):
        raise ValidationError(f"psi0 must have shape ({es.dim},), got {psi0.shape}")
    overlaps = np.abs(es.left_vectors @ psi0)
    peak = overlaps.max()
    if peak == 0:
        raise ValidationError("psi0 must be nonzero")
    overlaps = overlaps / peak
    return overlaps / np.sqrt(np.sum(overlaps ** 2))
