"""Backend selection for the index-arithmetic kernels.

The compiled extension is used when it imports cleanly; otherwise the numpy
fallback is used.  Setting ``RSPACE_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("RSPACE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

embed_index_map = _impl.embed_index_map
partial_trace = _impl.partial_trace
gather_reduced = _impl.gather_reduced
accumulate_extended = _impl.accumulate_extended

__all__ = [
    "BACKEND",
    "embed_index_map",
    "partial_trace",
    "gather_reduced",
    "accumulate_extended",
]
