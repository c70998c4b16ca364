"""Nonreciprocal SSH chain under open boundaries.

Site indexing
-------------
The chain has ``2N - 1`` sites ordered ``A1, B1, A2, B2, ..., A_N`` (the last
unit cell keeps only its A site). In 0-based array terms even indices are A
sites and odd indices are B sites; the unit cell of flat index ``i`` is
``i // 2 + 1``.

Hoppings: ``nu`` inside a cell (reciprocal), ``kappa1`` from ``A_{n+1}`` to
``B_n`` (superdiagonal) and ``kappa2`` from ``B_n`` to ``A_{n+1}``
(subdiagonal).
"""
from dataclasses import dataclass
import math
from typing import NamedTuple

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class ModelParams:
    """Lattice parameters ``(nu, kappa1, kappa2, N)``.

    ``kappa1 * kappa2 > 0`` is required; both negative is accepted (the
    similarity transform still exists). Circuit synthesis additionally
    requires both hoppings positive.
    """

    nu: float
    kappa1: float
    kappa2: float
    n_cells: int

    def __post_init__(self):
        for name in ("nu", "kappa1", "kappa2"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
        if self.nu <= 0:
            raise ValidationError(f"nu must be > 0 (energy unit), got {self.nu}")
        if self.kappa1 == 0 or self.kappa2 == 0:
            raise ValidationError(
                "kappa1 and kappa2 must be nonzero: the similarity matrix is "
                f"undefined for kappa1={self.kappa1}, kappa2={self.kappa2}"
            )
        if self.kappa1 * self.kappa2 < 0:
            raise ValidationError(
                "kappa1 * kappa2 must be > 0 (complex-spectrum regime is not "
                f"supported), got kappa1={self.kappa1}, kappa2={self.kappa2}"
            )
        if isinstance(self.n_cells, bool) or int(self.n_cells) != self.n_cells:
            raise ValidationError(f"n_cells must be an integer, got {self.n_cells!r}")
        if self.n_cells < 2:
            raise ValidationError(f"n_cells must be >= 2, got {self.n_cells}")
        object.__setattr__(self, "n_cells", int(self.n_cells))

    @property
    def dim(self) -> int:
        return 2 * self.n_cells - 1

    @property
    def kappa(self) -> float:
        """Geometric-mean inter-cell hopping ``sqrt(kappa1 * kappa2)``."""
        return math.sqrt(self.kappa1 * self.kappa2)

    @property
    def r(self) -> float:
        """Skin decay ratio ``sqrt(kappa1 / kappa2)``; ``r > 1`` means left skin."""
        return math.sqrt(self.kappa1 / self.kappa2)

    @property
    def is_hermitian(self) -> bool:
        return self.kappa1 == self.kappa2

    @property
    def skin_direction(self) -> str:
        if self.is_hermitian:
            return "none"
        return "left" if abs(self.kappa1) > abs(self.kappa2) else "right"

    def as_dict(self):
        return {
            "nu": self.nu,
            "kappa1": self.kappa1,
            "kappa2": self.kappa2,
            "n_cells": self.n_cells,
        }


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Banded storage of a tridiagonal matrix.

    ``upper[i]`` is entry ``(i, i+1)`` and ``lower[i]`` is entry ``(i+1, i)``.
    """

    diag: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    @property
    def dim(self) -> int:
        return self.diag.size

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.upper, self.lower))

    def to_dense(self) -> np.ndarray:
        out = np.diag(self.diag.astype(float))
        idx = np.arange(self.dim - 1)
        out[idx, idx + 1] = self.upper
        out[idx + 1, idx] = self.lower
        return out

    def matvec(self, x):
        x = np.asarray(x)
        y = self.diag * x
        y[:-1] += self.upper * x[1:]
        y[1:] += self.lower * x[:-1]
        return y

    def max_abs(self) -> float:
        return float(max(np.abs(self.diag).max(initial=0.0),
                         np.abs(self.upper).max(initial=0.0),
                         np.abs(self.lower).max(initial=0.0)))


def _alternating(first, second, length):
    out = np.empty(length)
    out[0::2] = first
    out[1::2] = second
    return out


def build_hamiltonian(p: ModelParams) -> TridiagonalMatrix:
    """Nonreciprocal SSH Hamiltonian ``H`` as a ``(2N-1)``-dimensional band."""
    m = p.dim - 1
    return TridiagonalMatrix(
        diag=np.zeros(p.dim),
        upper=_alternating(p.nu, p.kappa1, m),
        lower=_alternating(p.nu, p.kappa2, m),
    )


def build_hermitian_counterpart(p: ModelParams) -> TridiagonalMatrix:
    """Symmetric matrix ``S^-1 H S`` with inter-cell hopping ``kappa``.

    For negative hopping pairs the inter-cell entry carries the sign of
    ``kappa1`` so that the similarity relation stays exact.
    """
    off = _alternating(p.nu, math.copysign(p.kappa, p.kappa1), p.dim - 1)
    return TridiagonalMatrix(diag=np.zeros(p.dim), upper=off, lower=off.copy())


def build_similarity(p: ModelParams) -> np.ndarray:
    """Diagonal of ``S``: ``(1, 1, 1/r, 1/r, ..., r^-(N-2), r^-(N-2), r^-(N-1))``."""
    cell = np.arange(p.dim) // 2
    return p.r ** (-cell.astype(float))


def analytic_zero_mode(p: ModelParams) -> np.ndarray:
    """Normalized ``E = 0`` eigenvector of ``H``.

    Amplitude ``(-nu/kappa1)^(n-1)`` on ``A_n`` and zero on every B site.
    """
    ratio = -p.nu / p.kappa1
    v = np.zeros(p.dim, dtype=complex)
    v[0::2] = ratio ** np.arange(p.n_cells, dtype=float)
    return v / np.linalg.norm(v)


class EndStateCheck(NamedTuple):
    present: bool
    decay_ratio: float


def has_left_end_state(p: ModelParams) -> EndStateCheck:
    """Non-Bloch criterion ``|kappa1 kappa2| > nu^2`` and the zero-mode ratio ``|nu/kappa1|``."""
    return EndStateCheck(
        present=abs(p.kappa1 * p.kappa2) > p.nu ** 2,
        decay_ratio=abs(p.nu / p.kappa1),
    )
