"""Finite congruence quotients of the pro-p Iwahori subgroup and of its
standard subgroups, with H^1 = Hom(G, F_p) and the torus action on it.

Elements are 2x2 matrices over Z/p^n encoded as ``((a*N + b)*N + c)*N + d``
with ``N = p^n``.  Groups taken modulo the central pro-p scalars are stored
through the representative with top-left entry 1.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import backend
from .errors import NotDiagonalizable, RangeError, TooLarge
from .gf import FMat, field_make
from .hecke import TorusCharacter, primitive_root

MAX_ORDER = 10**6

SELECTORS = ("I1modZ1", "I1P", "I1Ps", "I1U", "I1Us")

# log_p |G| as a function of the level n
ORDER_EXPONENT = {
    "I1modZ1": lambda n: 3 * n - 2,
    "I1P": lambda n: 2 * n - 1,
    "I1Ps": lambda n: 2 * n - 2,
    "I1U": lambda n: n,
    "I1Us": lambda n: n - 1,
}

QUOTIENT = {"I1modZ1": True, "I1P": True, "I1Ps": True, "I1U": False, "I1Us": False}

Mat = tuple[int, int, int, int]


def _generators(p: int, n: int, selector: str) -> list[Mat]:
    N = p**n
    up = (1, 1, 0, 1)
    low = (1, 0, p % N, 1)
    d1 = ((1 + p) % N, 0, 0, 1)
    d2 = (1, 0, 0, (1 + p) % N)
    return {
        "I1modZ1": [up, low, d1, d2],
        "I1P": [up, d1, d2],
        "I1Ps": [low, d1, d2],
        "I1U": [up],
        "I1Us": [low],
    }[selector]


@dataclass(eq=False)
class FinitePGroup:
    p: int
    n: int
    selector: str
    generators: list[Mat]
    elements: np.ndarray  # sorted codes
    quotient: bool
    index: dict[int, int] = field(repr=False, default_factory=dict)

    @property
    def N(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return len(self.elements)

    def encode(self, m: Mat) -> int:
        N = self.N
        a, b, c, d = (x % N for x in m)
        if self.quotient:
            z = pow(a, -1, N)
            a, b, c, d = 1, b * z % N, c * z % N, d * z % N
        return ((a * N + b) * N + c) * N + d

    def decode(self, code: int) -> Mat:
        N = self.N
        d = code % N
        code //= N
        c = code % N
        code //= N
        b = code % N
        return (code // N, b, c, d)

    def mul(self, x: Mat, y: Mat) -> Mat:
        N = self.N
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % N, (a * f + b * h) % N, (c * e + d * g) % N, (c * f + d * h) % N)

    def inv(self, x: Mat) -> Mat:
        N = self.N
        a, b, c, d = x
        det = pow((a * d - b * c) % N, -1, N)
        return (d * det % N, -b * det % N, -c * det % N, a * det % N)

    def normal(self, x: Mat) -> Mat:
        return self.decode(self.encode(x))

    @property
    def identity(self) -> Mat:
        return (1, 0, 0, 1)

    def power(self, x: Mat, k: int) -> Mat:
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return self.normal(out)

    def commutator(self, x: Mat, y: Mat) -> Mat:
        return self.normal(self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y)))

    def subgroup(self, gens: list[Mat]) -> np.ndarray:
        codes = [self.encode(g) for g in gens]
        return backend.closure([self.encode(self.identity)], codes, self.N, self.quotient)

    def normal_closure(self, seeds: list[Mat]) -> set[int]:
        gens = [self.normal(s) for s in seeds]
        while True:
            S = set(int(x) for x in self.subgroup(gens))
            extra = []
            for t in gens:
                for g in self.generators:
                    conj = self.normal(self.mul(self.mul(self.inv(g), t), g))
                    if self.encode(conj) not in S:
                        extra.append(conj)
            if not extra:
                return S
            gens.extend(extra)

    @cached_property
    def frattini(self) -> set[int]:
        """Normal closure of generator commutators and p-th powers."""
        seeds = [self.power(g, self.p) for g in self.generators]
        for x, y in itertools.combinations(self.generators, 2):
            seeds.append(self.commutator(x, y))
        return self.normal_closure(seeds)

    @cached_property
    def h1(self) -> "HomSpace":
        return _hom_space(self)


def group_build(p: int, n: int, selector: str) -> FinitePGroup:
    if selector not in SELECTORS:
        raise RangeError(f"unknown group {selector!r}; expected one of {', '.join(SELECTORS)}")
    if p % 2 == 0 or p < 3:
        raise RangeError(f"p = {p} must be an odd prime")
    if n not in (1, 2, 3):
        raise RangeError(f"level {n} outside 1..3")
    e = ORDER_EXPONENT[selector](n)
    if p**e > MAX_ORDER:
        raise TooLarge(f"|G| = {p}^{e} exceeds {MAX_ORDER}")
    gens = _generators(p, n, selector)
    G = FinitePGroup(p, n, selector, gens, np.empty(0, dtype=np.int64), QUOTIENT[selector])
    elems = np.sort(G.subgroup(gens))
    G.elements = elems
    G.index = {int(c): i for i, c in enumerate(elems)}
    if len(elems) != p**e:
        raise AssertionError(f"{selector} at level {n}: order {len(elems)} != {p}^{e}")
    return G


# ---------------------------------------------------------------------------
# Hom(G, F_p)


@dataclass(eq=False)
class HomSpace:
    """Basis of Hom(G, F_p): coordinates of G/Phi in the basis ``basis_elems``."""

    group: FinitePGroup
    basis_elems: list[Mat]
    coords: dict[int, tuple[int, ...]]  # element code -> coordinate vector

    @property
    def dim(self) -> int:
        return len(self.basis_elems)

    def evaluate(self, k: int, x: Mat) -> int:
        """k-th basis homomorphism at x."""
        return self.coords[self.group.encode(x)][k]

    def values_on_generators(self) -> np.ndarray:
        G = self.group
        return np.array([self.coords[G.encode(g)] for g in G.generators], dtype=np.int64).T


def _hom_space(G: FinitePGroup) -> HomSpace:
    p = G.p
    phi = G.frattini
    # pick generators independent modulo Phi
    phi_gens = [G.decode(c) for c in _gens_of(G, phi)]
    chosen: list[Mat] = []
    H = phi
    for g in G.generators:
        if G.encode(g) not in H:
            chosen.append(g)
            H = set(int(x) for x in G.subgroup(chosen + phi_gens))
    dim = len(chosen)
    if p**dim * len(phi) != G.order:
        raise AssertionError("G/Phi is not spanned by the chosen generators")
    # coordinates of every element: first on the cosets of Phi, via combinations of chosen
    coset_coord: dict[int, tuple[int, ...]] = {}
    for combo in itertools.product(range(p), repeat=dim):
        rep = G.identity
        for g, c in zip(chosen, combo):
            rep = G.mul(rep, G.power(g, c))
        rep = G.normal(rep)
        for f in phi:
            coset_coord[G.encode(G.mul(rep, G.decode(f)))] = combo
    if len(coset_coord) != G.order:
        raise AssertionError("coset enumeration does not cover G")
    return HomSpace(G, chosen, coset_coord)


def _gens_of(G: FinitePGroup, S: set[int]) -> list[int]:
    """A small generating set of the subgroup S (greedy)."""
    gens: list[int] = []
    span: set[int] = {G.encode(G.identity)}
    for c in sorted(S):
        if c not in span:
            gens.append(c)
            span = set(int(x) for x in G.subgroup([G.decode(x) for x in gens]))
            if len(span) == len(S):
                break
    return gens


def hom_fp(G: FinitePGroup) -> tuple[int, np.ndarray]:
    """(dim Hom(G, F_p), basis as values on the fixed generators (dim x #gens))."""
    H = G.h1
    return H.dim, H.values_on_generators()


def brute_force_hom_count(G: FinitePGroup) -> int:
    """Count generator assignments in F_p that extend to a homomorphism, by
    propagating values along the Cayley graph and checking every edge."""
    p = G.p
    gens = G.generators
    elems = [int(c) for c in G.elements]
    # right-multiplication edges
    edges = []
    for c in elems:
        x = G.decode(c)
        for k, g in enumerate(gens):
            edges.append((c, k, G.encode(G.mul(x, g))))
    ident = G.encode(G.identity)
    count = 0
    for vals in itertools.product(range(p), repeat=len(gens)):
        value = {ident: 0}
        stack = [ident]
        while stack:
            c = stack.pop()
            x = G.decode(c)
            for k, g in enumerate(gens):
                t = G.encode(G.mul(x, g))
                v = (value[c] + vals[k]) % p
                if t not in value:
                    value[t] = v
                    stack.append(t)
        if all(value[t] == (value[c] + vals[k]) % p for c, k, t in edges):
            count += 1
    return count


# ---------------------------------------------------------------------------
# torus action


def teichmuller(x: int, p: int, n: int) -> int:
    return pow(x, p ** (n - 1), p**n)


def torus_generators(p: int, n: int) -> tuple[Mat, Mat]:
    g = teichmuller(primitive_root(p), p, n)
    return (g, 0, 0, 1), (1, 0, 0, g)


def torus_matrices(G: FinitePGroup) -> tuple[FMat, FMat]:
    """Action matrices of h1, h2 on Hom(G, F_p): (h.phi)(x) = phi(h^-1 x h),
    written so that h.(sum v_k phi_k) = sum (v A)_k phi_k."""
    F = field_make(G.p)
    H = G.h1
    out = []
    for h in torus_generators(G.p, G.n):
        hinv = G.inv(h)
        A = np.zeros((H.dim, H.dim), dtype=np.int64)
        for j, b in enumerate(H.basis_elems):
            conj = G.mul(G.mul(hinv, b), h)
            A[:, j] = H.coords[G.encode(conj)]
        out.append(FMat(F, A))
    return out[0], out[1]


def eigenchars(G: FinitePGroup) -> Counter:
    """Multiset of torus characters on Hom(G, F_p)."""
    p = G.p
    F = field_make(p)
    A1, A2 = torus_matrices(G)
    g = primitive_root(p)
    d = G.h1.dim
    out: Counter = Counter()
    for m in range(p - 1):
        for n in range(p - 1):
            B1 = A1 - FMat.scalar(F, d, pow(g, m, p))
            B2 = A2 - FMat.scalar(F, d, pow(g, n, p))
            stacked = FMat(F, np.hstack([B1.data, B2.data]))
            k = stacked.left_kernel().rows if d else 0
            if k:
                out[TorusCharacter(m, n, p)] += k
    if sum(out.values()) != d:
        raise NotDiagonalizable(f"eigenspaces cover {sum(out.values())} of {d} dimensions")
    return out


def eigenchar_labels(G: FinitePGroup) -> list[str]:
    return sorted(chi.label() for chi, k in eigenchars(G).items() for _ in range(k))


def ext1_char(psi: TorusCharacter, chi: TorusCharacter, G: FinitePGroup) -> int:
    """Multiplicity of psi * chi^-1 among the eigencharacters of Hom(G, F_p)."""
    return eigenchars(G)[psi * chi.inverse()]
