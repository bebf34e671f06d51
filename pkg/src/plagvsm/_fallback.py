"""Pure-Python twin of ``_kernels``, used when the extension is not built.

Same inputs, same merge order and same floating-point operation sequence as
the compiled version, so both backends produce identical matrices.
"""

import math

import numpy as np


def _rows(indptr, indices, data=None):
    indptr = [int(x) for x in indptr]
    idx = [int(x) for x in indices]
    vals = None if data is None else [float(x) for x in data]
    for i in range(len(indptr) - 1):
        lo, hi = indptr[i], indptr[i + 1]
        yield idx[lo:hi], (None if vals is None else vals[lo:hi])


def cosine_matrix(indptr, indices, data):
    rows = list(_rows(indptr, indices, data))
    n = len(rows)
    norms = []
    for _, vals in rows:
        acc = 0.0
        for x in vals:
            acc = acc + x * x
        norms.append(math.sqrt(acc))

    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        if norms[i] == 0.0:
            continue
        ki, vi = rows[i]
        for j in range(i + 1, n):
            if norms[j] == 0.0:
                continue
            kj, vj = rows[j]
            acc = 0.0
            a = b = 0
            la, lb = len(ki), len(kj)
            while a < la and b < lb:
                if ki[a] == kj[b]:
                    acc = acc + vi[a] * vj[b]
                    a += 1
                    b += 1
                elif ki[a] < kj[b]:
                    a += 1
                else:
                    b += 1
            v = acc / (norms[i] * norms[j])
            out[i, j] = v
            out[j, i] = v
    return out


def jaccard_matrix(indptr, indices):
    rows = [set(k) for k, _ in _rows(indptr, indices)]
    n = len(rows)
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            union = len(rows[i]) + len(rows[j])
            if union == 0:
                continue
            inter = len(rows[i] & rows[j])
            v = inter / (union - inter)
            out[i, j] = v
            out[j, i] = v
    return out
