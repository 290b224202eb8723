# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t


def rref_inplace(int64_t[:, ::1] a, const int64_t[:, ::1] sub_t, const int64_t[:, ::1] mul_t,
                 const int64_t[::1] inv_t, Py_ssize_t ncols=-1):
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef int64_t s, f, tmp
    if ncols < 0:
        ncols = n
    pivots = []
    for col in range(ncols):
        if row == m:
            break
        piv = -1
        for i in range(row, m):
            if a[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(n):
                tmp = a[row, j]
                a[row, j] = a[piv, j]
                a[piv, j] = tmp
        s = inv_t[a[row, col]]
        for j in range(n):
            a[row, j] = mul_t[s, a[row, j]]
        for i in range(m):
            if i == row:
                continue
            f = a[i, col]
            if f == 0:
                continue
            for j in range(n):
                if a[row, j] != 0:
                    a[i, j] = sub_t[a[i, j], mul_t[f, a[row, j]]]
        pivots.append(col)
        row += 1
    return pivots


def closure(seeds, gens, modulus, bint quotient):
    cdef int64_t N = modulus
    cdef int64_t size = N * N * N * N
    if size > (1 << 24):
        from ._pykernels import closure as slow_closure
        return slow_closure(seeds, gens, modulus, quotient)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(size, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] inv = np.zeros(N, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(size, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] g = np.zeros((len(gens), 4), dtype=np.int64)
    cdef Py_ssize_t ng = len(gens), head = 0, tail = 0, k
    cdef int64_t x, code, a1, b1, c1, d1, a, b, c, d, z
    for x in range(N):
        try:
            inv[x] = pow(int(x), -1, int(N))
        except ValueError:
            inv[x] = 0
    for k in range(ng):
        code = gens[k]
        g[k, 3] = code % N
        code //= N
        g[k, 2] = code % N
        code //= N
        g[k, 1] = code % N
        g[k, 0] = code // N
    for s in seeds:
        code = s
        if not seen[code]:
            seen[code] = 1
            out[tail] = code
            tail += 1
    while head < tail:
        code = out[head]
        head += 1
        d1 = code % N
        code //= N
        c1 = code % N
        code //= N
        b1 = code % N
        a1 = code // N
        for k in range(ng):
            a = (a1 * g[k, 0] + b1 * g[k, 2]) % N
            b = (a1 * g[k, 1] + b1 * g[k, 3]) % N
            c = (c1 * g[k, 0] + d1 * g[k, 2]) % N
            d = (c1 * g[k, 1] + d1 * g[k, 3]) % N
            if quotient:
                z = inv[a]
                a = 1
                b = b * z % N
                c = c * z % N
                d = d * z % N
            code = ((a * N + b) * N + c) * N + d
            if not seen[code]:
                seen[code] = 1
                out[tail] = code
                tail += 1
    return out[:tail].copy()
