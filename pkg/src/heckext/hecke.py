"""The pro-p Iwahori-Hecke algebra of GL2(Q_p) mod p as a presented algebra,
together with its small modules.

Generators are ``Tns``, ``TPi``, ``TPi^-1`` and one idempotent ``e(m,n)`` for
every torus character ``(m, n)`` whose restriction to the scalars matches the
central character.  Modules are right modules, as everywhere in
:mod:`heckext.presalg`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import (
    InvalidCharacterData,
    RangeError,
    UnknownKind,
    UnknownPiSpec,
    UnsupportedCentralCharacter,
)
from .gf import Field, FMat, field_make
from .presalg import (
    AlgebraModule,
    PresentedAlgebra,
    algebra_make,
    direct_sum,
    ext1,
    find_isomorphism,
    hom_space,
    is_isomorphic,
    module_check,
    proper_submodules,
    quotient_module,
    relation,
    submodule,
)

TNS, TPI, TPI_INV = "Tns", "TPi", "TPi^-1"


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True, order=True)
class TorusCharacter:
    """``diag([a],[d]) -> a^m d^n`` on the torus of Teichmueller diagonals."""

    m: int
    n: int
    p: int

    def __post_init__(self):
        e = self.p - 1
        object.__setattr__(self, "m", self.m % e)
        object.__setattr__(self, "n", self.n % e)

    @classmethod
    def trivial(cls, p: int) -> "TorusCharacter":
        return cls(0, 0, p)

    @classmethod
    def alpha(cls, p: int) -> "TorusCharacter":
        return cls(1, -1, p)

    @property
    def swap(self) -> "TorusCharacter":
        return TorusCharacter(self.n, self.m, self.p)

    def __mul__(self, other: "TorusCharacter") -> "TorusCharacter":
        return TorusCharacter(self.m + other.m, self.n + other.n, self.p)

    def __pow__(self, k: int) -> "TorusCharacter":
        return TorusCharacter(self.m * k, self.n * k, self.p)

    def inverse(self) -> "TorusCharacter":
        return TorusCharacter(-self.m, -self.n, self.p)

    def __call__(self, a: int, d: int) -> int:
        """Value on ``diag([a],[d])`` for a, d in F_p^x, as an integer mod p."""
        return pow(a, self.m, self.p) * pow(d, self.n, self.p) % self.p

    @property
    def on_scalars(self) -> int:
        return (self.m + self.n) % (self.p - 1)

    def label(self) -> str:
        """``1``, ``a``, ``a^-1``, ``a^k`` for powers of the root character, else ``(m,n)``."""
        e = self.p - 1
        if (self.m + self.n) % e == 0:
            k = self.m
            if k == 0:
                return "1"
            if k == 1:
                return "a"
            if k == e - 1:
                return "a^-1"
            return f"a^{k}"
        return f"({self.m},{self.n})"

    def __str__(self) -> str:
        return f"({self.m},{self.n})"

    def __repr__(self) -> str:
        return f"TorusCharacter({self.m},{self.n};p={self.p})"


@dataclass(frozen=True)
class SmoothChar:
    """``eta = omega^u * mu_vp``: ``omega^u`` on units, ``eta(p) = vp``.

    ``vp`` is an integer taken in the prime field.
    """

    u: int = 0
    vp: int = 1

    def normalized(self, p: int) -> "SmoothChar":
        return SmoothChar(self.u % (p - 1), self.vp % p)

    def __mul__(self, other: "SmoothChar") -> "SmoothChar":
        return SmoothChar(self.u + other.u, self.vp * other.vp)

    def value_minus_inv_p(self, F: Field) -> int:
        """eta(-1/p) = eta([-1]) * eta(p)^-1, an element of the prime field."""
        p = F.p
        vp = self.vp % p
        if vp == 0:
            raise InvalidCharacterData("eta(p) must be a unit")
        return F((-1) ** (self.u % (p - 1)) * pow(vp, -1, p))

    def label(self, p: int) -> str:
        e = self.normalized(p)
        if e.vp not in (1, p - 1):
            raise InvalidCharacterData(f"no surface name for eta(p) = {e.vp}")
        w = "" if e.u == 0 else ("w" if e.u == 1 else f"w^{e.u}")
        mu = "mu-1" if e.vp == p - 1 else ""
        if w and mu:
            return f"{w}*{mu}"
        return w or mu or "1"


TRIVIAL = SmoothChar(0, 1)
OMEGA = SmoothChar(1, 1)
MU_MINUS = SmoothChar(0, -1)


# ---------------------------------------------------------------------------
# the algebra


@dataclass(frozen=True)
class HeckeCtx:
    field: Field
    zeta_unit: int
    zeta_p: int = 1

    def __post_init__(self):
        object.__setattr__(self, "zeta_unit", self.zeta_unit % (self.field.p - 1))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def chars(self) -> tuple[TorusCharacter, ...]:
        p, z = self.p, self.zeta_unit
        return tuple(TorusCharacter(m, z - m, p) for m in range(p - 1))

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.zeta_unit, self.zeta_p))


def idem(chi: TorusCharacter) -> str:
    return f"e{chi}"


@lru_cache(maxsize=None)
def hecke_algebra(ctx: HeckeCtx) -> PresentedAlgebra:
    F = ctx.field
    one, minus = 1, F(-1)
    chars = ctx.chars
    gens = [TNS, TPI, TPI_INV] + [idem(c) for c in chars]
    rels = []
    for a in chars:
        for b in chars:
            if a == b:
                rels.append(relation([(one, (idem(a), idem(a))), (minus, (idem(a),))], 0,
                                     f"{idem(a)}^2 = {idem(a)}"))
            else:
                rels.append(relation([(one, (idem(a), idem(b)))], 0, f"{idem(a)}*{idem(b)} = 0"))
    rels.append(relation([(one, (idem(c),)) for c in chars], 1, "sum of idempotents = 1"))
    for c in chars:
        ea, es = idem(c), idem(c.swap)
        rels.append(relation([(one, (ea, TNS)), (minus, (TNS, es))], 0, f"{ea}*Tns = Tns*{es}"))
        rels.append(relation([(one, (ea, TPI)), (minus, (TPI, es))], 0, f"{ea}*TPi = TPi*{es}"))
        rels.append(relation([(one, (ea, TNS, TNS)), (one, (ea, es, TNS))], 0,
                             f"{ea}*Tns^2 = -{ea}*{es}*Tns"))
    zinv = F.inv(ctx.zeta_p)
    rels.append(relation([(one, (TPI, TPI))], int(zinv), "TPi^2 = zeta(p)^-1"))
    return algebra_make(gens, rels, F, inverses={TPI: TPI_INV}, name=f"H(p={ctx.p},z={ctx.zeta_unit})")


def _module(ctx: HeckeCtx, dim: int, action: dict[str, np.ndarray], name: str) -> AlgebraModule:
    A = hecke_algebra(ctx)
    F = ctx.field
    full = {g: FMat(F, action.get(g, np.zeros((dim, dim), dtype=np.int64))) for g in A.generators}
    M = AlgebraModule(A, dim, full, name)
    bad = module_check(A, M)
    if bad:
        raise AssertionError(f"{name} violates {', '.join(map(str, bad))}")
    return M


def _field(p_or_field) -> Field:
    return p_or_field if isinstance(p_or_field, Field) else field_make(int(p_or_field))


def ctx_for(field, zeta_unit: int, zeta_p: int = 1) -> HeckeCtx:
    return HeckeCtx(_field(field), zeta_unit, zeta_p)


# ---------------------------------------------------------------------------
# module constructors


def module_M(r: int, lam: int, eta: SmoothChar = TRIVIAL, field=5) -> AlgebraModule:
    """M(r, lam, eta): basis v1 (e_chi part), v2 (e_{chi^s} part), v1 TPi = v2."""
    F = _field(field)
    p = F.p
    if not (0 <= r <= p - 1):
        raise RangeError(f"r = {r} outside 0..{p - 1}")
    eta = eta.normalized(p)
    zeta_p = F((eta.vp * eta.vp) % p)
    if zeta_p != 1:
        raise UnsupportedCentralCharacter(f"eta(p)^2 = {zeta_p} != 1")
    ctx = HeckeCtx(F, r + 2 * eta.u, 1)
    chi = TorusCharacter(r + eta.u, eta.u, p)
    c = F.mul(eta.value_minus_inv_p(F), lam)
    minus = F(-1)
    e = {idem(x): np.zeros((2, 2), dtype=np.int64) for x in ctx.chars}
    e[idem(chi)][0, 0] = 1
    e[idem(chi.swap)][1, 1] = 1
    tns = np.zeros((2, 2), dtype=np.int64)
    if r == p - 1:
        tns[0, 0] = minus
    tns[1, 0] = c
    if r == 0:
        tns[1, 1] = minus
    swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
    name = f"M({r},{lam},{eta.label(p)})" if F.k == 1 else f"M({r},{F.coefficients(lam)},{eta.label(p)})"
    return _module(ctx, 2, {TNS: tns, TPI: swap, TPI_INV: swap, **e}, name)


def module_E(l1: int, l2: int, r: int, eta: SmoothChar = TRIVIAL, field=5) -> AlgebraModule:
    """E_{l1,l2}: basis (v_chi, v_chis, w_chi, w_chis), the v's span a copy of M(r,0,eta)."""
    F = _field(field)
    p = F.p
    if not (0 < r < p - 1):
        raise RangeError(f"E needs 0 < r < p-1, got r = {r}")
    eta = eta.normalized(p)
    if F((eta.vp * eta.vp) % p) != 1:
        raise UnsupportedCentralCharacter("eta(p)^2 != 1")
    ctx = HeckeCtx(F, r + 2 * eta.u, 1)
    chi = TorusCharacter(r + eta.u, eta.u, p)
    e = {idem(x): np.zeros((4, 4), dtype=np.int64) for x in ctx.chars}
    e[idem(chi)][[0, 2], [0, 2]] = 1
    e[idem(chi.swap)][[1, 3], [1, 3]] = 1
    tns = np.zeros((4, 4), dtype=np.int64)
    tns[2, 1] = l1
    tns[3, 0] = l2
    swap = np.zeros((4, 4), dtype=np.int64)
    swap[[0, 1, 2, 3], [1, 0, 3, 2]] = 1
    return _module(ctx, 4, {TNS: tns, TPI: swap, TPI_INV: swap, **e}, f"E({l1},{l2};{r})")


def module_char(chi: TorusCharacter, c_ns: int, c_pi: int, field=5, zeta_p: int = 1,
                name: str = "") -> AlgebraModule:
    """One-dimensional module: e_chi = 1, Tns = c_ns, TPi = c_pi (encoded scalars)."""
    F = _field(field)
    if chi != chi.swap:
        raise InvalidCharacterData(f"{chi} is not swap-invariant")
    if c_ns not in (0, F(-1)):
        raise InvalidCharacterData(f"Tns scalar {c_ns} violates Tns^2 = -Tns")
    if c_pi == 0 or F.mul(F.mul(c_pi, c_pi), zeta_p) != 1:
        raise InvalidCharacterData(f"TPi scalar {c_pi} violates TPi^2 = zeta(p)^-1")
    ctx = HeckeCtx(F, chi.on_scalars, zeta_p)
    e = {idem(x): np.zeros((1, 1), dtype=np.int64) for x in ctx.chars}
    e[idem(chi)][0, 0] = 1
    inv = int(F.inv(c_pi))
    return _module(ctx, 1, {TNS: [[c_ns]], TPI: [[c_pi]], TPI_INV: [[inv]], **e},
                   name or f"char({chi},{c_ns},{c_pi})")


def module_triv(eta: SmoothChar = TRIVIAL, field=5) -> AlgebraModule:
    """Hecke module of eta o det: Tns = 0, TPi = eta(-1/p)."""
    F = _field(field)
    eta = eta.normalized(F.p)
    chi = TorusCharacter(eta.u, eta.u, F.p)
    lab = "I(1)" if eta == TRIVIAL else f"I(1,{eta.label(F.p)})"
    return module_char(chi, 0, eta.value_minus_inv_p(F), F, name=lab)


def module_sp(eta: SmoothChar = TRIVIAL, field=5) -> AlgebraModule:
    """Hecke module of Sp (x) eta o det: Tns = -1, TPi = -eta(-1/p)."""
    F = _field(field)
    eta = eta.normalized(F.p)
    chi = TorusCharacter(eta.u, eta.u, F.p)
    lab = "I(Sp)" if eta == TRIVIAL else f"I(Sp,{eta.label(F.p)})"
    return module_char(chi, F(-1), F.neg(eta.value_minus_inv_p(F)), F, name=lab)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True, eq=False)
class SpTrivSplit:
    sub: AlgebraModule
    quot: AlgebraModule
    sub_basis: FMat
    n_one_dim_submodules: int

    def __iter__(self):
        yield self.sub
        yield self.quot


def sp_triv_split(field=5) -> SpTrivSplit:
    """The unique line in M(0,1) stable under the algebra, and the quotient."""
    F = _field(field)
    M = module_M(0, 1, TRIVIAL, F)
    lines = proper_submodules(M, dim=1)
    if len(lines) != 1:
        raise AssertionError(f"M(0,1) has {len(lines)} one-dimensional submodules")
    S = submodule(M, lines[0])
    Q = quotient_module(M, S)
    sub = AlgebraModule(M.algebra, 1, S.module.action, "sub M(0,1)")
    quot = AlgebraModule(M.algebra, 1, Q.action, "M(0,1)/sub")
    if is_isomorphic(sub, quot):
        raise AssertionError("submodule and quotient of M(0,1) are isomorphic")
    return SpTrivSplit(sub, quot, S.basis, len(lines))


def chars_of(M: AlgebraModule) -> tuple[TorusCharacter, ...]:
    p = M.field.p
    out = []
    for g in M.algebra.generators:
        if g.startswith("e("):
            m, n = g[2:-1].split(",")
            out.append(TorusCharacter(int(m), int(n), p))
    return tuple(out)


def torus_isotype(M: AlgebraModule) -> dict[TorusCharacter, int]:
    """Multiplicity of each torus character: rank of the idempotent's matrix."""
    out = {}
    for chi in chars_of(M):
        k = M[idem(chi)].rank()
        if k:
            out[chi] = k
    if sum(out.values()) != M.dim:
        raise AssertionError("idempotent ranks do not add up to the dimension")
    return dict(sorted(out.items()))


def isotype_labels(M: AlgebraModule) -> list[str]:
    out = []
    for chi, k in torus_isotype(M).items():
        out.extend([chi.label()] * k)
    return sorted(out)


# ---------------------------------------------------------------------------
# irreducible G-representations and their Hecke shadows


@dataclass(frozen=True)
class PiSpec:
    """An irreducible (or, at p = 3, reducible-flagged) smooth representation.

    kind: ``trivial`` (eta o det), ``steinberg`` (Sp (x) eta o det),
    ``principal`` pi(r, lam, eta), ``supersingular`` pi(r, 0, eta).
    """

    kind: str
    r: int = 0
    lam: int = 0
    eta: SmoothChar = TRIVIAL

    def label(self, p: int) -> str:
        e = self.eta.label(p)
        tw = "" if e == "1" else f",{e}"
        if self.kind == "trivial":
            return "1" if not tw else f"1{tw.replace(',', '*')}"
        if self.kind == "steinberg":
            return "Sp" if not tw else f"Sp{tw.replace(',', '*')}"
        if self.kind == "principal":
            return f"pi({self.r},{self.lam % p}{tw})"
        return f"pi({self.r},0{tw})"

    def text(self, p: int) -> str:
        """Spec string accepted by :func:`parse_pi_spec`."""
        e = self.eta.label(p)
        tw = "" if e == "1" else f",{e}"
        if self.kind in ("trivial", "steinberg"):
            return self.kind if not tw else f"{self.kind}({tw[1:]})"
        if self.kind == "principal":
            return f"principal({self.r},{self.lam % p}{tw})"
        return f"supersingular({self.r}{tw})"


KINDS = ("trivial", "steinberg", "principal", "supersingular")


def parse_pi_spec(text: str) -> PiSpec:
    """``trivial`` | ``steinberg`` | ``principal(r,lam)`` | ``supersingular(r)``, optionally
    twisted: ``trivial(eta)``, ``steinberg(eta)``, or a trailing ``,eta`` argument."""
    from .expr import parse_eta  # local import: expr depends on this module

    t = text.replace(" ", "")
    if t in ("trivial", "1"):
        return PiSpec("trivial")
    if t in ("steinberg", "Sp"):
        return PiSpec("steinberg")
    for kind in ("trivial", "steinberg"):
        if t.startswith(kind + "(") and t.endswith(")"):
            return PiSpec(kind, 0, 0, parse_eta(t[len(kind) + 1 : -1]))
    for kind in ("principal", "supersingular"):
        if t.startswith(kind + "(") and t.endswith(")"):
            parts = t[len(kind) + 1 : -1].split(",")
            try:
                if kind == "principal" and len(parts) in (2, 3):
                    eta = parse_eta(parts[2]) if len(parts) == 3 else TRIVIAL
                    return PiSpec(kind, int(parts[0]), int(parts[1]), eta)
                if kind == "supersingular" and len(parts) in (1, 2):
                    eta = parse_eta(parts[1]) if len(parts) == 2 else TRIVIAL
                    return PiSpec(kind, int(parts[0]), 0, eta)
            except ValueError as exc:
                raise UnknownPiSpec(f"bad pi spec {text!r}: {exc}") from None
    raise UnknownPiSpec(f"unknown pi spec {text!r}")


def hecke_shadow(spec: PiSpec, field=5) -> AlgebraModule:
    """The I_1-invariants of the representation, as a Hecke module."""
    F = _field(field)
    if spec.kind == "trivial":
        return module_triv(spec.eta, F)
    if spec.kind == "steinberg":
        return module_sp(spec.eta, F)
    if spec.kind == "principal":
        if spec.lam % F.p == 0:
            raise UnknownPiSpec("principal series needs lam != 0")
        return module_M(spec.r, F(spec.lam), spec.eta, F)
    if spec.kind == "supersingular":
        return module_M(spec.r, 0, spec.eta, F)
    raise UnknownPiSpec(spec.kind)


def principal_partner(spec: PiSpec, p: int) -> PiSpec:
    """pi(s, lam^-1, omega^{r+1} eta) with 0 <= s <= p-2, s = p-3-r mod p-1."""
    s = (p - 3 - spec.r) % (p - 1)
    return PiSpec("principal", s, pow(spec.lam, -1, p), SmoothChar(spec.eta.u + spec.r + 1, spec.eta.vp))


def r1_module(spec: PiSpec | str, field=5) -> AlgebraModule:
    """First derived functor of I_1-invariants, as a Hecke module.

    This is input, not a recomputation: supersingular gives two copies of the
    shadow, trivial gives M(p-3,1,omega), Steinberg gives M(p-1,1).  An
    irreducible principal series gives its own shadow plus the shadow of the
    partner pi(s, lam^-1, omega^{r+1}), taken once when the two coincide.
    """
    F = _field(field)
    p = F.p
    if isinstance(spec, str):
        spec = parse_pi_spec(spec)
    eta = spec.eta
    if spec.kind == "supersingular":
        pi = hecke_shadow(spec, F)
        return direct_sum(pi, pi)
    if spec.kind == "trivial":
        return module_M(p - 3, 1, OMEGA * eta, F)
    if spec.kind == "steinberg":
        return module_M(p - 1, 1, eta, F)
    if spec.kind == "principal":
        pi = hecke_shadow(spec, F)
        partner = principal_partner(spec, p)
        other = module_M(partner.r, F(partner.lam), partner.eta, F)
        if is_isomorphic(pi, other):
            return pi
        return direct_sum(pi, other)
    raise UnknownPiSpec(spec.kind)


def twist_labels_for(p: int, zeta_unit: int) -> Iterator[SmoothChar]:
    """Characters eta = omega^u mu_{+-1} with eta^2 restricting to zeta on units."""
    for u in range(p - 1):
        if (2 * u - zeta_unit) % (p - 1) == 0:
            yield SmoothChar(u, 1)
            yield SmoothChar(u, -1)


def candidates(p: int, zeta_unit: int) -> list[PiSpec]:
    """Irreducible representations with central character (zeta_unit, zeta(p) = 1)
    whose Hecke shadows are pairwise non-isomorphic.  Lambda runs over F_p^x."""
    F = field_make(p)
    out: list[PiSpec] = []
    for eta in twist_labels_for(p, zeta_unit):
        out.append(PiSpec("trivial", 0, 0, eta))
        out.append(PiSpec("steinberg", 0, 0, eta))
    for u in range(p - 1):
        eta = SmoothChar(u, 1)
        for r in range(0, p):
            if (r + 2 * u - zeta_unit) % (p - 1):
                continue
            out.append(PiSpec("supersingular", r, 0, eta))
            if r >= 1:
                for lam in range(1, p):
                    if r == p - 1 and lam in (1, p - 1):
                        continue
                    out.append(PiSpec("principal", r, lam, eta))
    # keep the first representative of each isomorphism class of shadows
    kept: list[tuple[PiSpec, AlgebraModule]] = []
    for spec in out:
        M = hecke_shadow(spec, F)
        if any(N.dim == M.dim and is_isomorphic(M, N) for _, N in kept):
            continue
        kept.append((spec, M))
    return [s for s, _ in kept]


# ---------------------------------------------------------------------------
# tables


TABLE_KINDS = ("extH", "kuku", "sp-triv", "stex-split", "rst-isotype")


def _row(left: AlgebraModule, right: AlgebraModule, **extra) -> dict:
    A = left.algebra
    row = {
        "left": left.name,
        "right": right.name,
        "hom": len(hom_space(A, left, right)),
        "ext1": ext1(A, left, right).dim,
        "provenance": "computed",
    }
    row.update(extra)
    return row


def torus_algebra(p: int, field=None) -> PresentedAlgebra:
    """Group algebra of the torus (F_p^x)^2 on generators h1 = diag(g,1), h2 = diag(1,g)."""
    F = _field(field or p)
    one, minus = 1, F(-1)
    rels = [
        relation([(one, ("h1",) * (p - 1))], 1, "h1^(p-1) = 1"),
        relation([(one, ("h2",) * (p - 1))], 1, "h2^(p-1) = 1"),
        relation([(one, ("h1", "h2")), (minus, ("h2", "h1"))], 0, "h1 h2 = h2 h1"),
    ]
    return algebra_make(["h1", "h2"], rels, F, name=f"torus(p={p})")


def primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)):
            return g
    return 1


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return sorted(set(out))


def torus_restriction(M: AlgebraModule) -> AlgebraModule:
    """M as a torus representation, h acting by sum_chi chi(h) e_chi."""
    F = M.field
    p = F.p
    g = primitive_root(p)
    T = torus_algebra(p, F)
    acc = {h: FMat.zeros(F, M.dim, M.dim) for h in ("h1", "h2")}
    for chi in chars_of(M):
        E = M[idem(chi)]
        acc["h1"] = acc["h1"] + E.scale(F(chi(g, 1)))
        acc["h2"] = acc["h2"] + E.scale(F(chi(1, g)))
    return AlgebraModule(T, M.dim, acc, f"{M.name}|torus")


def torus_char_module(chi: TorusCharacter, field) -> AlgebraModule:
    F = _field(field)
    g = primitive_root(F.p)
    T = torus_algebra(F.p, F)
    return AlgebraModule(T, 1, {"h1": FMat(F, [[F(chi(g, 1))]]), "h2": FMat(F, [[F(chi(1, g))]])},
                         chi.label())


def ext_table(p: int, kind: str) -> list[dict]:
    F = field_make(p)
    if kind not in TABLE_KINDS:
        raise UnknownKind(f"unknown table kind {kind!r}; expected one of {', '.join(TABLE_KINDS)}")
    rows: list[dict] = []
    if kind == "extH":
        for r in range(p):
            pi = module_M(r, 0, TRIVIAL, F)
            rows.append(_row(pi, pi, r=r))
    elif kind == "kuku":
        for r in range(1, p - 1):
            pi = module_M(r, 0, TRIVIAL, F)
            for l1 in range(1, p):
                for l2 in range(1, p):
                    rows.append(_row(module_E(l1, l2, r, TRIVIAL, F), pi, r=r))
    elif kind == "sp-triv":
        one, sp = module_triv(TRIVIAL, F), module_sp(TRIVIAL, F)
        for a in (one, sp):
            for b in (one, sp):
                rows.append(_row(a, b))
    elif kind == "stex-split":
        for r in range(1, p - 1):
            pi = module_M(r, 0, TRIVIAL, F)
            pi2 = direct_sum(pi, pi)
            self_ext = ext1(pi.algebra, pi, pi).dim
            for l1 in range(p):
                for l2 in range(p):
                    E = module_E(l1, l2, r, TRIVIAL, F)
                    split = find_isomorphism(E, pi2) is not None
                    rows.append({
                        "left": E.name,
                        "right": f"I(pi)+I(pi) r={r}",
                        "hom": len(hom_space(E.algebra, E, pi2)),
                        "ext1": self_ext,
                        "split": int(split),
                        "r": r,
                        "provenance": "computed",
                    })
    elif kind == "rst-isotype":
        specs = [(p - 1, TRIVIAL)]
        if p >= 5:
            specs.append((p - 3, OMEGA))
        for r, eta in specs:
            M = module_M(r, 1, eta, F)
            TM = torus_restriction(M)
            for chi, mult in torus_isotype(M).items():
                C = torus_char_module(chi, F)
                T = TM.algebra
                hom = len(hom_space(T, C, TM))
                rows.append({
                    "left": chi.label(),
                    "right": M.name,
                    "hom": hom,
                    "ext1": ext1(T, C, TM).dim,
                    "multiplicity": mult,
                    "provenance": "computed",
                })
    return rows

