# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rank/range kernels.

Ranks are assigned by walking tie groups along a per-column sort order
(numpy's argsort supplies the order; the walk itself runs without the
GIL). The arithmetic mirrors the numpy fallback in maxdep.kernels
exactly, element by element, so both backends return bit-identical
arrays. Inputs are validated by the wrappers in maxdep.kernels; these
routines assume finite, C-contiguous float64 data and in-range indices.
"""
from libc.stdlib cimport free, malloc

import numpy as np


cdef void _walk_ranks(const double[:, ::1] values,
                      const Py_ssize_t[:, ::1] orders,
                      const Py_ssize_t* cnt,
                      Py_ssize_t m,
                      Py_ssize_t j,
                      bint midrank,
                      double* psd) noexcept nogil:
    """psd[row] = pseudo-value of the original row within the resampled
    column j, where cnt[row] is the row's multiplicity (NULL = all 1)
    and m is the resample size. Ranks of a tie group occupy the count
    interval (cum, cum + total]."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t t = 0, t2, g
    cdef Py_ssize_t cum = 0, total
    cdef double v, p
    while t < n:
        v = values[orders[j, t], j]
        t2 = t
        total = 0
        while t2 < n and values[orders[j, t2], j] == v:
            total += cnt[orders[j, t2]] if cnt != NULL else 1
            t2 += 1
        if midrank:
            p = (cum + 1 + cum + total) / (2.0 * m)
        else:
            p = (cum + total) / (1.0 * m)
        for g in range(t, t2):
            psd[orders[j, g]] = p
        cum += total
        t = t2


def _column_orders(values) -> np.ndarray:
    """(k, n) row indices sorting each column ascending."""
    a = np.asarray(values)
    return np.ascontiguousarray(np.argsort(a, axis=0, kind="stable").T, dtype=np.intp)


def column_ranks(const double[:, ::1] values, bint midrank):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t k = values.shape[1]
    orders_arr = _column_orders(values)
    cdef const Py_ssize_t[:, ::1] orders = orders_arr
    out_arr = np.empty((n, k), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double* psd = <double*> malloc(n * sizeof(double))
    if psd == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    with nogil:
        for j in range(k):
            _walk_ranks(values, orders, NULL, n, j, midrank, psd)
            for i in range(n):
                out[i, j] = psd[i]
    free(psd)
    return out_arr


def row_ranges(const double[:, ::1] u):
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t k = u.shape[1]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double mx, mn, v
    with nogil:
        for i in range(n):
            mx = u[i, 0]
            mn = u[i, 0]
            for j in range(1, k):
                v = u[i, j]
                if v > mx:
                    mx = v
                if v < mn:
                    mn = v
            out[i] = mx - mn
    return out_arr


cdef _resample_with_orders(const double[:, ::1] values,
                           const Py_ssize_t[:, ::1] orders,
                           const Py_ssize_t[::1] idx,
                           bint midrank):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t k = values.shape[1]
    cdef Py_ssize_t m = idx.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t* cnt = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef double* buf = <double*> malloc((n + 2 * m) * sizeof(double))
    if cnt == NULL or buf == NULL:
        free(cnt)
        free(buf)
        raise MemoryError()
    cdef double* psd = buf
    cdef double* mx = buf + n
    cdef double* mn = buf + n + m
    cdef Py_ssize_t i, j
    cdef double p
    with nogil:
        for i in range(n):
            cnt[i] = 0
        for i in range(m):
            cnt[idx[i]] += 1
        for j in range(k):
            _walk_ranks(values, orders, cnt, m, j, midrank, psd)
            if j == 0:
                for i in range(m):
                    p = psd[idx[i]]
                    mx[i] = p
                    mn[i] = p
            else:
                for i in range(m):
                    p = psd[idx[i]]
                    if p > mx[i]:
                        mx[i] = p
                    if p < mn[i]:
                        mn[i] = p
        for i in range(m):
            out[i] = mx[i] - mn[i]
    free(cnt)
    free(buf)
    return out_arr


def resample_ranges(const double[:, ::1] values, const Py_ssize_t[::1] idx, bint midrank):
    return _resample_with_orders(values, _column_orders(values), idx, midrank)


def resample_ranges_prepared(const double[:, ::1] values,
                             const Py_ssize_t[:, ::1] orders,
                             const Py_ssize_t[::1] idx,
                             bint midrank):
    return _resample_with_orders(values, orders, idx, midrank)
