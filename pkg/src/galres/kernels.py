"""Kernel selection: compiled subset scan when available, pure Python otherwise.

Set GALRES_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by tests that compare the two implementations).
"""

import os

from . import _kernels_py

if os.environ.get("GALRES_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _subsetscan as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def filter_integer_trace(re, im, fixed, size, tol):
    """Lex-ordered subsets of the given size containing ``fixed`` whose
    value sum is within ``tol`` of a real integer."""
    return _impl.filter_integer_trace(re, im, fixed, size, tol)


def backend_name() -> str:
    return BACKEND
