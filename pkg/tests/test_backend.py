from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckext import _pykernels, backend
from heckext.gf import field_make

needs_compiled = pytest.mark.skipif(backend.compiled is None, reason="compiled extension not built")


@needs_compiled
@given(st.integers(0, 2**32 - 1), st.sampled_from([(3, 1), (7, 1), (5, 2)]))
def test_rref_kernels_agree(seed, pk):
    F = field_make(*pk)
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 8, size=2)
    a = rng.integers(0, F.q, size=(m, n)).astype(np.int64)
    # sparse-ish rows exercise the pivot search
    a[rng.random((m, n)) < 0.4] = 0
    ncols = int(rng.integers(-1, n + 1))
    x, y = a.copy(), a.copy()
    px = _pykernels.rref_inplace(x, F.SUB, F.MUL, F.INV, ncols)
    py = backend.compiled.rref_inplace(y, F.SUB, F.MUL, F.INV, ncols)
    assert list(px) == list(py)
    assert np.array_equal(x, y)


@needs_compiled
@pytest.mark.parametrize("quotient", [False, True])
def test_closure_kernels_agree(quotient):
    N = 9
    enc = lambda a, b, c, d: ((a * N + b) * N + c) * N + d  # noqa: E731
    gens = [enc(1, 1, 0, 1), enc(1, 0, 3, 1), enc(4, 0, 0, 1)]
    seeds = [enc(1, 0, 0, 1)]
    x = _pykernels.closure(seeds, gens, N, quotient)
    y = backend.compiled.closure(seeds, gens, N, quotient)
    assert np.array_equal(x, y)


def test_use_switches_and_restores():
    prev = backend.use("python")
    try:
        assert backend.NAME == "python"
        assert backend.rref_inplace is _pykernels.rref_inplace
    finally:
        backend.use(prev)
    with pytest.raises(ValueError):
        backend.use("fortran")
