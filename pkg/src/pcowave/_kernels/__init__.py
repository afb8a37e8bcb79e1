"""Kernel backend selection.

The hot inner loops (coefficient fitting, filter-bank steps, expansion
evaluation, table interpolation) exist twice: a Cython extension
(``pcowave._kernels._fast``) and a pure-numpy fallback (``_ref``).  The
compiled backend is used when importable; set ``PCOWAVE_BACKEND=python``
or ``PCOWAVE_BACKEND=cython`` to force one explicitly.
"""

import os

from . import _ref

_choice = os.environ.get("PCOWAVE_BACKEND", "auto").lower()

if _choice not in ("auto", "cython", "python"):
    raise ValueError(f"PCOWAVE_BACKEND must be auto|cython|python, got {_choice!r}")

_impl = None
if _choice in ("auto", "cython"):
    try:
        from . import _fast as _impl
    except ImportError:
        if _choice == "cython":
            raise
        _impl = None
if _impl is None:
    _impl = _ref

BACKEND_NAME = _impl.BACKEND_NAME

interp_table = _impl.interp_table
fit_coeffs = _impl.fit_coeffs
eval_expansion = _impl.eval_expansion
analysis_step = _impl.analysis_step
synthesis_step = _impl.synthesis_step


def backends():
    """Mapping of available backend name -> module (for benchmarks/tests)."""
    found = {"python": _ref}
    try:
        from . import _fast
        found["cython"] = _fast
    except ImportError:
        pass
    return found
