"""Kernel backend selection.

The compiled extension is used when it was built; otherwise (or when
``FOCUSEDSLS_PURE_PYTHON=1``) the pure-Python module is used.  ``BACKEND``
names the active one.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("FOCUSEDSLS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

find_edge = _impl.find_edge
forbidden_mask = _impl.forbidden_mask
trace_bicolored = _impl.trace_bicolored
count_paths = _impl.count_paths


def backends():
    """Available backends as a {name: module} dict (for tests and benchmarks)."""
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    return out
