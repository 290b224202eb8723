"""Compare the compiled and numpy kernels on row reduction and group closure.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from heckext import backend
from heckext.gf import field_make
from heckext.pgroup import _generators, group_build


def rref_case(p: int, k: int, shape: tuple[int, int], seed: int = 0):
    F = field_make(p, k)
    rng = np.random.default_rng(seed)
    a = rng.integers(0, F.q, size=shape, dtype=np.int64)

    def run():
        backend.rref_inplace(a.copy(), F.SUB, F.MUL, F.INV)

    return run


def closure_case(p: int, n: int, selector: str):
    G = group_build(p, n, selector)
    gens = [G.encode(g) for g in _generators(p, n, selector)]
    ident = [G.encode(G.identity)]

    def run():
        backend.closure(ident, gens, G.N, G.quotient)

    return run


CASES = {
    "rref GF(7) 60x120": lambda: rref_case(7, 1, (60, 120)),
    "rref GF(5^2) 80x80": lambda: rref_case(5, 2, (80, 80)),
    "rref GF(13) 200x200": lambda: rref_case(13, 1, (200, 200)),
    "closure I1modZ1 p=5 n=2": lambda: closure_case(5, 2, "I1modZ1"),
    "closure I1modZ1 p=3 n=3": lambda: closure_case(3, 3, "I1modZ1"),
    "closure I1P p=7 n=2": lambda: closure_case(7, 2, "I1P"),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ns = ap.parse_args()
    names = backend.AVAILABLE
    print(f"{'case':28s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    prev = backend.NAME
    try:
        for label, make in CASES.items():
            times = []
            for name in names:
                backend.use(name)
                fn = make()
                fn()  # warm caches
                times.append(min(timeit.repeat(fn, number=1, repeat=ns.repeat)))
            line = f"{label:28s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
            if len(times) > 1:
                line += f"{times[1] / times[0]:11.1f}x"
            print(line)
    finally:
        backend.use(prev)


if __name__ == "__main__":
    main()
