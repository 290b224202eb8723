"""Pure-Python/numpy implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors them line for
line and is preferred when the compiled extension is importable.
"""

from __future__ import annotations

import numpy as np


def rref_inplace(a, sub_t, mul_t, inv_t, ncols=-1):
    """Reduce ``a`` (int64, encoded field elements) to reduced row echelon form.

    Field arithmetic goes through the lookup tables.  Only the first
    ``ncols`` columns are eligible as pivots (all columns when negative).
    Returns the pivot column list.
    """
    m, n = a.shape
    if ncols < 0:
        ncols = n
    pivots = []
    row = 0
    for col in range(ncols):
        if row == m:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row] = mul_t[inv_t[a[row, col]], a[row]]
        f = a[:, col].copy()
        f[row] = 0
        hits = np.flatnonzero(f)
        if hits.size:
            a[hits] = sub_t[a[hits], mul_t[f[hits, None], a[row][None, :]]]
        pivots.append(col)
        row += 1
    return pivots


def closure(seeds, gens, modulus, quotient):
    """Close ``seeds`` under right multiplication by ``gens`` in GL2(Z/modulus).

    Elements are encoded as ``((a*N + b)*N + c)*N + d``.  With ``quotient``
    set, every product is rescaled so that its top-left entry is 1 (canonical
    representative modulo scalars).  Returns the elements in BFS order.
    """
    N = int(modulus)
    inv = [0] * N
    for x in range(N):
        try:
            inv[x] = pow(x, -1, N)
        except ValueError:
            inv[x] = 0
    gens = [_decode(int(g), N) for g in gens]
    seen = set()
    order = []
    for s in seeds:
        s = int(s)
        if s not in seen:
            seen.add(s)
            order.append(s)
    i = 0
    while i < len(order):
        a1, b1, c1, d1 = _decode(order[i], N)
        i += 1
        for a2, b2, c2, d2 in gens:
            a = (a1 * a2 + b1 * c2) % N
            b = (a1 * b2 + b1 * d2) % N
            c = (c1 * a2 + d1 * c2) % N
            d = (c1 * b2 + d1 * d2) % N
            if quotient:
                z = inv[a]
                a, b, c, d = 1, b * z % N, c * z % N, d * z % N
            code = ((a * N + b) * N + c) * N + d
            if code not in seen:
                seen.add(code)
                order.append(code)
    return np.array(order, dtype=np.int64)


def _decode(code, N):
    d = code % N
    code //= N
    c = code % N
    code //= N
    return code // N, code % N, c, d
