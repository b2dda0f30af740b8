"""NumPy fallback for the separating-axis kernels in ``_sat.pyx``."""
from __future__ import annotations

import numpy as np


def _normals(poly: np.ndarray) -> np.ndarray:
    edges = np.roll(poly, -1, axis=-2) - poly
    return np.stack([edges[..., 1], -edges[..., 0]], axis=-1)


def overlap_pair(a, b) -> bool:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) < 3 or len(b) < 3:
        return False
    for p, q in ((a, b), (b, a)):
        n = _normals(p)
        pp = p @ n.T
        qq = q @ n.T
        if np.any((pp.max(axis=0) <= qq.min(axis=0)) | (qq.max(axis=0) <= pp.min(axis=0))):
            return False
    return True


def overlap_batch(a, batch) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    batch = np.asarray(batch, dtype=float)
    M = batch.shape[0]
    if M == 0 or len(a) < 3 or batch.shape[1] < 3:
        return np.zeros(M, dtype=bool)
    na = _normals(a)                                  # (k, 2)
    pa = a @ na.T                                     # (k, k)
    amin, amax = pa.min(axis=0), pa.max(axis=0)
    pb = batch @ na.T                                 # (M, m, k)
    bmin, bmax = pb.min(axis=1), pb.max(axis=1)
    sep = np.any((amax <= bmin) | (bmax <= amin), axis=1)
    nb = _normals(batch)                              # (M, m, 2)
    qb = np.einsum("Mjd,Mid->Mji", batch, nb)         # (M, m, m)
    qbmin, qbmax = qb.min(axis=1), qb.max(axis=1)
    qa = np.einsum("jd,Mid->Mji", a, nb)              # (M, k, m)
    qamin, qamax = qa.min(axis=1), qa.max(axis=1)
    sep |= np.any((qbmax <= qamin) | (qamax <= qbmin), axis=1)
    return ~sep
