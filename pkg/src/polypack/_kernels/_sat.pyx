# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled separating-axis kernels.

All polygons are convex, counterclockwise and already shrunk by the
feasibility tolerance, so boundary contact counts as separated.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline bint _separated_on_edges(const double[:, :] p, Py_ssize_t np_,
                                     const double[:, :] q, Py_ssize_t nq) noexcept nogil:
    cdef Py_ssize_t i, j, i2
    cdef double nx, ny, d, pmin, pmax, qmin, qmax
    for i in range(np_):
        i2 = i + 1
        if i2 == np_:
            i2 = 0
        nx = p[i2, 1] - p[i, 1]
        ny = p[i, 0] - p[i2, 0]
        pmin = 1e300
        pmax = -1e300
        for j in range(np_):
            d = p[j, 0] * nx + p[j, 1] * ny
            if d < pmin:
                pmin = d
            if d > pmax:
                pmax = d
        qmin = 1e300
        qmax = -1e300
        for j in range(nq):
            d = q[j, 0] * nx + q[j, 1] * ny
            if d < qmin:
                qmin = d
            if d > qmax:
                qmax = d
        if pmax <= qmin or qmax <= pmin:
            return True
    return False


def overlap_pair(const double[:, :] a, const double[:, :] b):
    """True iff the interiors of convex polygons ``a`` and ``b`` intersect."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    if na < 3 or nb < 3:
        return False
    if _separated_on_edges(a, na, b, nb):
        return False
    if _separated_on_edges(b, nb, a, na):
        return False
    return True


def overlap_batch(const double[:, :] a, const double[:, :, :] batch):
    """Overlap flag of ``a`` against every polygon in ``batch`` (M, m, 2)."""
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t M = batch.shape[0], m = batch.shape[1]
    out = np.zeros(M, dtype=np.bool_)
    cdef cnp.npy_bool[:] res = out
    cdef Py_ssize_t r
    if na < 3 or m < 3:
        return out
    with nogil:
        for r in range(M):
            if _separated_on_edges(a, na, batch[r], m):
                continue
            if _separated_on_edges(batch[r], m, a, na):
                continue
            res[r] = 1
    return out
