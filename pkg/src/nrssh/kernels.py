"""Kernel backend selection.

The compiled extension ``nrssh._ckernels`` is used when it imports; otherwise
the NumPy implementations in ``nrssh._pykernels`` are used. Setting the
environment variable ``NRSSH_PURE_PYTHON=1`` forces the fallback.

Both backends expose ``tql_tridiagonal``, ``modal_evaluate`` and
``modal_abs_trapezoid``; ``BACKEND`` names the one in use.
"""
import os

from . import _pykernels

python_backend = _pykernels

try:
    if os.environ.get("NRSSH_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

tql_tridiagonal = _active.tql_tridiagonal
modal_evaluate = _active.modal_evaluate
modal_abs_trapezoid = _active.modal_abs_trapezoid


def backends():
    """Return ``{name: module}`` for every importable backend."""
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    return out
