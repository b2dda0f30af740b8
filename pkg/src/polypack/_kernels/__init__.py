"""Hot separating-axis kernels.

The compiled Cython module is used when it was built; otherwise (or when
``POLYPACK_PURE=1``) the NumPy implementation is selected. Both expose
``overlap_pair`` and ``overlap_batch`` with identical
semantics: inputs are float64 vertex arrays of convex CCW polygons that
were already shrunk by the feasibility tolerance.
"""
from __future__ import annotations

import os

import numpy as np

from . import _sat_py as pure

BACKEND = "python"
_impl = pure

if os.environ.get("POLYPACK_PURE") != "1":
    try:
        from . import _sat as compiled  # type: ignore[attr-defined]
    except ImportError:
        compiled = None
    else:
        _impl = compiled
        BACKEND = "cython"
else:
    compiled = None


def _c(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.float64)


def overlap_pair(a, b) -> bool:
    return bool(_impl.overlap_pair(_c(a), _c(b)))


def overlap_batch(a, batch) -> np.ndarray:
    batch = _c(batch)
    if batch.ndim != 3 or batch.shape[0] == 0:
        return np.zeros(batch.shape[0] if batch.ndim == 3 else 0, dtype=bool)
    return np.asarray(_impl.overlap_batch(_c(a), batch), dtype=bool)
