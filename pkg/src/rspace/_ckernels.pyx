# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled index-arithmetic kernels.

Same contracts as ``rspace._pykernels``; see that module for semantics.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def embed_index_map(dims, subset):
    cdef Py_ssize_t n = len(dims)
    cdef cnp.int64_t[::1] d = np.asarray(dims, dtype=np.int64)
    cdef cnp.uint8_t[::1] in_sub = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t p
    for p in subset:
        in_sub[p] = 1
    cdef cnp.int64_t d_s = 1, d_c = 1, total = 1
    for p in range(n):
        total *= d[p]
        if in_sub[p]:
            d_s *= d[p]
        else:
            d_c *= d[p]
    out_arr = np.empty((d_s, d_c), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef cnp.int64_t full, rem, digit, s_idx, c_idx, s_w, c_w
    for full in range(total):
        rem = full
        s_idx = 0
        c_idx = 0
        s_w = 1
        c_w = 1
        # walk particles least-significant first
        for p in range(n - 1, -1, -1):
            digit = rem % d[p]
            rem = rem // d[p]
            if in_sub[p]:
                s_idx += digit * s_w
                s_w *= d[p]
            else:
                c_idx += digit * c_w
                c_w *= d[p]
        out[s_idx, c_idx] = full
    return out_arr


def partial_trace(op, const cnp.int64_t[:, ::1] index_map):
    cdef const double complex[:, :] a = np.asarray(op, dtype=np.complex128)
    cdef Py_ssize_t d_s = index_map.shape[0], d_c = index_map.shape[1]
    out_arr = np.zeros((d_s, d_s), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, c
    cdef double complex acc
    for i in range(d_s):
        for j in range(d_s):
            acc = 0
            for c in range(d_c):
                acc = acc + a[index_map[i, c], index_map[j, c]]
            out[i, j] = acc
    return out_arr


def gather_reduced(basis, const cnp.int64_t[:, ::1] index_map):
    cdef const double complex[:, :] b = np.asarray(basis, dtype=np.complex128)
    cdef Py_ssize_t d_s = index_map.shape[0], d_c = index_map.shape[1]
    cdef Py_ssize_t r = b.shape[1]
    out_arr = np.empty((d_s, d_c * r), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t a, c, i
    cdef cnp.int64_t row
    for a in range(d_s):
        for c in range(d_c):
            row = index_map[a, c]
            for i in range(r):
                out[a, c * r + i] = b[row, i]
    return out_arr


def accumulate_extended(acc, proj, const cnp.int64_t[:, ::1] index_map):
    cdef double complex[:, ::1] out = acc
    cdef const double complex[:, :] p = np.asarray(proj, dtype=np.complex128)
    cdef Py_ssize_t d_s = index_map.shape[0], d_c = index_map.shape[1]
    cdef Py_ssize_t i, j, c
    for c in range(d_c):
        for i in range(d_s):
            for j in range(d_s):
                out[index_map[i, c], index_map[j, c]] += p[i, j]
    return acc
