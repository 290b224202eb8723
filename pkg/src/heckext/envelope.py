"""Finite-level injective envelopes of torus characters for H semidirect C,
C the cyclic p-group (I_1 cap U) / (1 + p^m Z_p).

The envelope of chi is the twisted regular representation of C: basis
e_i (i mod p^m), u e_i = e_(i+1), h e_i = chi(h) e_(a(h) i) where a(h) is the
Teichmueller unit by which h conjugates u (a(h1) = [g], a(h2) = [g]^-1 for
h1 = diag([g], 1), h2 = diag(1, [g])).  Its socle filtration is the kernel
filtration of X = u - 1.

To reuse the right-module engine the left action rho is written as
R_g = rho(g)^T on row vectors.  That reverses products, so the presentation
below carries each group relation with its words reversed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import RangeError, TooLarge, VerificationFailed
from .gf import FMat, field_make
from .hecke import TorusCharacter, primitive_root
from .presalg import AlgebraModule, PresentedAlgebra, algebra_make, ext1, module_check, relation

MAX_DIM = 343


def unit_exponents(p: int, m: int) -> tuple[int, int]:
    """a(h1), a(h2) modulo p^m."""
    N = p**m
    t = pow(primitive_root(p), p ** (m - 1), N) if m >= 1 else 1
    return t, pow(t, -1, N)


def _discrete_log(x: int, p: int) -> int:
    g = primitive_root(p)
    for k in range(p - 1):
        if pow(g, k, p) == x % p:
            return k
    raise ValueError(f"{x} is not a unit mod {p}")


def char_values(chi: TorusCharacter) -> tuple[int, int]:
    g = primitive_root(chi.p)
    return chi(g, 1), chi(1, g)


def char_from_values(v1: int, v2: int, p: int) -> TorusCharacter:
    return TorusCharacter(_discrete_log(v1, p), _discrete_log(v2, p), p)


@lru_cache(maxsize=None)
def group_algebra(p: int, m: int) -> PresentedAlgebra:
    """Opposite-algebra presentation of F_p[H semidirect C_(p^m)] on u, h1, h2."""
    F = field_make(p)
    N = p**m
    a1, a2 = unit_exponents(p, m)
    minus = F(-1)
    rels = [
        relation([(1, ("u",) * N)], 1, f"u^{N} = 1"),
        relation([(1, ("h1",) * (p - 1))], 1, f"h1^{p - 1} = 1"),
        relation([(1, ("h2",) * (p - 1))], 1, f"h2^{p - 1} = 1"),
        relation([(1, ("h1", "h2")), (minus, ("h2", "h1"))], 0, "h1 h2 = h2 h1"),
        # h u h^-1 = u^a(h), reversed
        relation([(1, ("u", "h1")), (minus, ("h1",) + ("u",) * a1)], 0, f"h1 u = u^{a1} h1"),
        relation([(1, ("u", "h2")), (minus, ("h2",) + ("u",) * a2)], 0, f"h2 u = u^{a2} h2"),
    ]
    return algebra_make(["u", "h1", "h2"], rels, F, name=f"H.C(p={p},m={m})")


def char_module(psi: TorusCharacter, m: int) -> AlgebraModule:
    """One-dimensional representation: u trivial, torus by psi."""
    F = field_make(psi.p)
    v1, v2 = char_values(psi)
    A = group_algebra(psi.p, m)
    return AlgebraModule(A, 1, {"u": FMat(F, [[1]]), "h1": FMat(F, [[v1]]), "h2": FMat(F, [[v2]])},
                         psi.label())


@dataclass(frozen=True, eq=False)
class EnvelopeModule:
    chi: TorusCharacter
    m: int

    @property
    def p(self) -> int:
        return self.chi.p

    @property
    def dim(self) -> int:
        return self.p**self.m

    @cached_property
    def rho(self) -> dict[str, np.ndarray]:
        """Left action on column vectors."""
        p, N = self.p, self.dim
        a1, a2 = unit_exponents(p, self.m)
        v1, v2 = char_values(self.chi)
        shift = np.zeros((N, N), dtype=np.int64)
        shift[(np.arange(N) + 1) % N, np.arange(N)] = 1
        h1 = np.zeros((N, N), dtype=np.int64)
        h2 = np.zeros((N, N), dtype=np.int64)
        idx = np.arange(N)
        h1[(a1 * idx) % N, idx] = v1
        h2[(a2 * idx) % N, idx] = v2
        return {"u": shift, "h1": h1, "h2": h2}

    @cached_property
    def X(self) -> np.ndarray:
        return (self.rho["u"] - np.eye(self.dim, dtype=np.int64)) % self.p

    def module(self) -> AlgebraModule:
        F = field_make(self.p)
        A = group_algebra(self.p, self.m)
        action = {g: FMat(F, M.T) for g, M in self.rho.items()}
        return AlgebraModule(A, self.dim, action, f"J({self.chi.label()},m={self.m})")

    def x_power(self, k: int) -> np.ndarray:
        p = self.p
        out = np.eye(self.dim, dtype=np.int64)
        for _ in range(k):
            out = (self.X @ out) % p
        return out


def envelope_make(chi: TorusCharacter, m: int = 1) -> EnvelopeModule:
    if m not in (1, 2):
        raise RangeError(f"m = {m} outside 1..2")
    if chi.p**m > MAX_DIM:
        raise TooLarge(f"p^m = {chi.p ** m} exceeds {MAX_DIM}")
    J = EnvelopeModule(chi, m)
    bad = module_check(group_algebra(chi.p, m), J.module())
    if bad:
        raise VerificationFailed(f"envelope violates {', '.join(map(str, bad))}")
    return J


def invariants_dim(J: EnvelopeModule) -> int:
    F = field_make(J.p)
    return FMat(F, J.X).kernel().rows


def _layer_vector(J: EnvelopeModule, k: int) -> np.ndarray:
    """X^(N-k) e_0: lies in soc_k but not in soc_(k-1)."""
    e0 = np.zeros(J.dim, dtype=np.int64)
    e0[0] = 1
    return (J.x_power(J.dim - k) @ e0) % J.p


def layer_character(J: EnvelopeModule, k: int) -> TorusCharacter:
    """Torus character on soc_k / soc_(k-1), for 1 <= k <= p^m."""
    p = J.p
    v = _layer_vector(J, k)
    Xk = J.x_power(k - 1)
    base = (Xk @ v) % p
    piv = int(np.flatnonzero(base)[0])
    vals = []
    for h in ("h1", "h2"):
        img = (Xk @ ((J.rho[h] @ v) % p)) % p
        c = img[piv] * pow(int(base[piv]), -1, p) % p
        if not np.array_equal(img, (c * base) % p):
            raise VerificationFailed(f"layer {k} is not a torus eigenline")
        vals.append(int(c))
    return char_from_values(vals[0], vals[1], p)


def socle_series(J: EnvelopeModule) -> list[TorusCharacter]:
    """Characters of soc_k / soc_(k-1), k = 1 .. p^m.  Each piece is checked to
    be one-dimensional."""
    F = field_make(J.p)
    prev = 0
    out = []
    for k in range(1, J.dim + 1):
        d = FMat(F, J.x_power(k)).kernel().rows
        if d != prev + 1:
            raise VerificationFailed(f"soc_{k} has dimension {d}, expected {prev + 1}")
        prev = d
        out.append(layer_character(J, k))
    return out


def quotient_by_socle(J: EnvelopeModule) -> tuple[list[TorusCharacter], EnvelopeModule]:
    """Socle series of J / soc J computed directly on the quotient, and the
    envelope it should match (that of chi * alpha^-1)."""
    F = field_make(J.p)
    M = J.module()
    from .presalg import quotient_module, submodule

    soc = FMat(F, J.X).kernel()  # column kernel: rows are socle vectors
    S = submodule(M, soc)
    Q = quotient_module(M, S)
    p = J.p
    X = (Q["u"].data.T - np.eye(Q.dim, dtype=np.int64)) % p
    chars = []
    prev = 0
    Xk = np.eye(Q.dim, dtype=np.int64)
    for k in range(1, Q.dim + 1):
        Xk = (X @ Xk) % p
        ker = FMat(F, Xk).kernel()
        if ker.rows != prev + 1:
            raise VerificationFailed("quotient layers are not one-dimensional")
        prev = ker.rows
        # a vector in the new layer, pushed down to the socle of the quotient
        Xkm1 = np.linalg.matrix_power(X, k - 1) % p if k > 1 else np.eye(Q.dim, dtype=np.int64)
        for row in ker.data:
            base = (Xkm1 @ row) % p
            if base.any():
                v = row
                break
        piv = int(np.flatnonzero(base)[0])
        vals = []
        for h in ("h1", "h2"):
            img = (Xkm1 @ ((Q[h].data.T @ v) % p)) % p
            vals.append(int(img[piv] * pow(int(base[piv]), -1, p) % p))
        chars.append(char_from_values(vals[0], vals[1], p))
    return chars, EnvelopeModule(J.chi * TorusCharacter.alpha(p).inverse(), J.m)


# ---------------------------------------------------------------------------
# the recursion


@dataclass(frozen=True)
class DepthResult:
    e: int
    lam: int
    depth_checked: bool


def depth_values(p: int, r: int, n: int) -> tuple[int, int]:
    if not (0 <= r <= p - 1):
        raise RangeError(f"r = {r} outside 0..{p - 1}")
    if n < 0:
        raise RangeError("n must be non-negative")
    e = 0
    for _ in range(n):
        e = r + p * (p - 1 - r) + p * p * e
    base = (-1) ** r * _fact(r) * _fact(p - 1 - r)
    return e, pow(base % p, n, p)


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def minj_recursion(p: int, r: int, n: int, m: int | None = None) -> DepthResult:
    """(e_n, lambda_n) and, when e_n < p^m, a check inside the envelope of chi:
    there is a chi-eigenvector w at X-depth exactly e_n, and rescaling it gives
    v = lambda_n X^(e_n) w with v spanning the socle."""
    e, lam = depth_values(p, r, n)
    if m is None:
        m = 1 if e < p else 2
    checked = False
    if n > 0 and e < p**m and p**m <= MAX_DIM:
        chi = TorusCharacter(r, 0, p)
        J = envelope_make(chi, m)
        if layer_character(J, e + 1) != chi:
            raise VerificationFailed(f"layer {e + 1} of the envelope does not carry chi")
        w = _layer_vector(J, e + 1)
        top = (J.x_power(e) @ w) % p
        # rescale w so that lambda_n X^e w equals the normalised socle vector
        socle = FMat(field_make(p), J.X).kernel().data[0]
        piv = int(np.flatnonzero(socle)[0])
        scale = socle[piv] * pow(int(top[piv]) * lam % p, -1, p) % p
        if not np.array_equal((lam * scale * top) % p, socle):
            raise VerificationFailed("X^e w is not a multiple of the socle vector")
        checked = True
    return DepthResult(e, lam, checked)


# ---------------------------------------------------------------------------
# Ext^1 against the socle character


def ext1_envelope(psi: TorusCharacter, J: EnvelopeModule, cross_check: bool = True) -> int:
    """Multiplicity of psi in (J / chi)^u, which is Ext^1(psi, chi).  With
    ``cross_check`` the engine also confirms Ext^1(psi, J) = 0 and that
    Ext^1(psi, chi) computed on the presentation agrees."""
    chars, _ = quotient_by_socle(J)
    mult = int(chars[0] == psi)
    if cross_check:
        A = group_algebra(J.p, J.m)
        P = char_module(psi, J.m)
        if ext1(A, P, J.module()).dim != 0:
            raise VerificationFailed("Ext^1 into the envelope is non-zero")
        if ext1(A, P, char_module(J.chi, J.m)).dim != mult:
            raise VerificationFailed("engine Ext^1(psi, chi) disagrees with the envelope")
    return mult
