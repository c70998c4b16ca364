"""LC-circuit realization of the nonreciprocal SSH chain.

Node ``A_n`` carries an inductor ``L_A[n]`` and a capacitor ``D_A[n]`` to
ground; node ``B_n`` likewise with ``L_B[n]`` and ``D_B[n]``. Coupling
capacitors ``C_B[n]`` join ``A_n``-``B_n`` and ``C_A[n+1]`` join
``B_n``-``A_{n+1}``. The chain ends are grounded through ``C_A[1]`` (left)
and ``C_B[N]`` (right). Cell ``N`` has no B node, so ``L_B[N]`` and
``D_B[N]`` are listed in the component table but not placed in the circuit.

All values are SI (henry, farad, rad/s).
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import RealizabilityError, ValidationError
from .lattice import ModelParams, build_hamiltonian

_SNAP = 1e-12


@dataclass(frozen=True)
class CircuitDesign:
    """Per-cell component values for cells ``n = 1..N`` (array index ``n - 1``)."""

    params: ModelParams
    lam: float
    ref_L: float
    ref_C: float
    C_A: np.ndarray
    C_B: np.ndarray
    D_A: np.ndarray
    D_B: np.ndarray
    L_A: np.ndarray
    L_B: np.ndarray

    @property
    def n_cells(self):
        return self.params.n_cells

    @property
    def omega0(self):
        """Reference angular frequency ``1/sqrt(L C)``."""
        return 1.0 / math.sqrt(self.ref_L * self.ref_C)

    def table(self):
        """Rows ``(cell_index, C_A, C_B, D_A, D_B, L_A, L_B)``."""
        return [
            (n + 1, self.C_A[n], self.C_B[n], self.D_A[n], self.D_B[n], self.L_A[n], self.L_B[n])
            for n in range(self.n_cells)
        ]


def _require_positive_hoppings(p: ModelParams):
    if not (p.nu > 0 and p.kappa1 > 0 and p.kappa2 > 0):
        raise RealizabilityError(
            "circuit synthesis needs nu, kappa1, kappa2 > 0 "
            f"(got nu={p.nu}, kappa1={p.kappa1}, kappa2={p.kappa2}); negative "
            "hoppings and the inductor/capacitor-exchanged dual circuit are not supported"
        )


def min_lambda(p: ModelParams) -> float:
    """Smallest ``lambda`` giving non-negative ground capacitors."""
    return 1.0 + max(p.kappa1, p.kappa2) / p.nu


def default_lambda(p: ModelParams) -> float:
    """``1 + kappa1/nu``, which removes the B-node ground capacitors.

    Only defined for ``kappa1 >= kappa2 > 0``; otherwise pass ``lam`` explicitly.
    """
    _require_positive_hoppings(p)
    if p.kappa1 < p.kappa2:
        raise ValidationError(
            f"default lambda needs kappa1 >= kappa2 (got {p.kappa1} < {p.kappa2}); "
            "supply lambda explicitly"
        )
    return 1.0 + p.kappa1 / p.nu


def _ground_numerator(lam, nu, kappa):
    # lam*nu - nu - kappa, snapped to zero inside round-off
    value = lam * nu - nu - kappa
    if abs(value) <= _SNAP * (abs(lam * nu) + nu + abs(kappa)):
        return 0.0
    return value


def synthesize(p: ModelParams, lam: float = None, ref_L: float = 1e-3,
               ref_C: float = 100e-12) -> CircuitDesign:
    """Component values realizing ``H`` with ``script_H = (LC/nu) H``.

    Parameters
    ----------
    p : ModelParams
        Hoppings must all be positive.
    lam : float, optional
        Dimensionless diagonal ``Lambda / (LC)``; defaults to ``default_lambda(p)``.
    ref_L, ref_C : float
        Reference inductance (H) and capacitance (F).

    Raises
    ------
    RealizabilityError
        If a hopping is non-positive or ``lam < 1 + max(kappa1, kappa2)/nu``.
    """
    _require_positive_hoppings(p)
    if lam is None:
        lam = default_lambda(p)
    if not (ref_L > 0 and ref_C > 0 and math.isfinite(ref_L) and math.isfinite(ref_C)):
        raise ValidationError(f"ref_L and ref_C must be positive, got {ref_L}, {ref_C}")
    lam_min = min_lambda(p)
    if not math.isfinite(lam) or lam < lam_min * (1 - _SNAP):
        raise RealizabilityError(
            f"lambda={lam} is below 1 + max(kappa1, kappa2)/nu = {lam_min}; "
            "ground capacitors would be negative"
        )
    nu, k1, k2 = p.nu, p.kappa1, p.kappa2
    cell = np.arange(p.n_cells, dtype=float)
    C_A = ref_C * (k1 / k2) ** cell
    C_B = C_A * nu / k2
    D_A = C_A * _ground_numerator(lam, nu, k2) / k2
    D_B = C_A * _ground_numerator(lam, nu, k1) / k2
    L_A = ref_L * (k2 / k1) ** cell * k2 / nu
    return CircuitDesign(
        params=p, lam=float(lam), ref_L=float(ref_L), ref_C=float(ref_C),
        C_A=C_A, C_B=C_B, D_A=D_A, D_B=D_B, L_A=L_A, L_B=L_A.copy(),
    )


@dataclass(frozen=True)
class CircuitMatrices:
    """Kirchhoff-law matrices: ``script_H`` and the diagonal ``Lambda``."""

    script_H: np.ndarray
    Lambda: np.ndarray

    @property
    def lambda_diag(self):
        return np.diag(self.Lambda).copy()


def circuit_matrices(d: CircuitDesign, p: ModelParams = None, rtol: float = 1e-12) -> CircuitMatrices:
    """Assemble ``script_H`` and ``Lambda`` from component products.

    The result is checked against ``(LC/nu) H`` and ``lambda L C I``; a
    mismatch means ``d`` was not synthesized for ``p``.
    """
    if p is None:
        p = d.params
    if p.n_cells != d.n_cells:
        raise ValidationError(f"design has {d.n_cells} cells but params have {p.n_cells}")
    n_cells = d.n_cells
    dim = 2 * n_cells - 1
    H = np.zeros((dim, dim))
    lam_diag = np.zeros(dim)
    for n in range(n_cells):
        a = 2 * n
        lam_diag[a] = d.L_A[n] * (d.D_A[n] + d.C_A[n] + d.C_B[n])
        if n > 0:
            H[a, a - 1] = d.L_A[n] * d.C_A[n]
        if n < n_cells - 1:
            b = a + 1
            H[a, b] = d.L_A[n] * d.C_B[n]
            H[b, a] = d.L_B[n] * d.C_B[n]
            H[b, a + 2] = d.L_B[n] * d.C_A[n + 1]
            lam_diag[b] = d.L_B[n] * (d.D_B[n] + d.C_B[n] + d.C_A[n + 1])
    LC = d.ref_L * d.ref_C
    expected = (LC / p.nu) * build_hamiltonian(p).to_dense()
    scale = LC * max(1.0, d.lam, abs(p.kappa1) / p.nu, abs(p.kappa2) / p.nu)
    if np.max(np.abs(H - expected)) > rtol * scale:
        raise ValidationError("circuit matrix does not match (LC/nu) H: design/params mismatch")
    if np.max(np.abs(lam_diag - d.lam * LC)) > rtol * scale:
        raise ValidationError("Lambda is not lambda*L*C*I: design/params mismatch")
    return CircuitMatrices(script_H=H, Lambda=np.diag(lam_diag))
