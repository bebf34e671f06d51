# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pairwise kernels over CSR-encoded documents.

Rows are documents; ``indices`` within each row are strictly increasing term
ids. Only the upper triangle is computed and then mirrored, so the result is
bit-for-bit symmetric. The diagonal is left at 0.
"""

import numpy as np

from libc.math cimport sqrt
from libc.stdint cimport int32_t, int64_t


def cosine_matrix(const int64_t[::1] indptr, const int32_t[::1] indices, const double[::1] data):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.zeros((n, n), dtype=np.float64)
    norms_arr = np.zeros(n, dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double[::1] norms = norms_arr
    cdef Py_ssize_t i, j, a, a_end, b, b_end
    cdef double acc, v

    with nogil:
        for i in range(n):
            acc = 0.0
            for a in range(indptr[i], indptr[i + 1]):
                acc = acc + data[a] * data[a]
            norms[i] = sqrt(acc)

        for i in range(n):
            if norms[i] == 0.0:
                continue
            for j in range(i + 1, n):
                if norms[j] == 0.0:
                    continue
                acc = 0.0
                a = indptr[i]
                a_end = indptr[i + 1]
                b = indptr[j]
                b_end = indptr[j + 1]
                while a < a_end and b < b_end:
                    if indices[a] == indices[b]:
                        acc = acc + data[a] * data[b]
                        a += 1
                        b += 1
                    elif indices[a] < indices[b]:
                        a += 1
                    else:
                        b += 1
                v = acc / (norms[i] * norms[j])
                o[i, j] = v
                o[j, i] = v
    return out


def jaccard_matrix(const int64_t[::1] indptr, const int32_t[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, a, a_end, b, b_end, inter, union
    cdef double v

    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                a = indptr[i]
                a_end = indptr[i + 1]
                b = indptr[j]
                b_end = indptr[j + 1]
                union = (a_end - a) + (b_end - b)
                if union == 0:
                    continue
                inter = 0
                while a < a_end and b < b_end:
                    if indices[a] == indices[b]:
                        inter += 1
                        a += 1
                        b += 1
                    elif indices[a] < indices[b]:
                        a += 1
                    else:
                        b += 1
                union = union - inter
                v = (<double>inter) / (<double>union)
                o[i, j] = v
                o[j, i] = v
    return out
