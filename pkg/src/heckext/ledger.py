"""Dimension bookkeeping: headline Ext dimensions assembled from computed Hecke
dimensions plus cited inputs, and classification tables of extensions between
irreducible representations.

Every number carries a provenance tag: ``computed`` (produced by the engine in
this run), ``cited`` (taken as input from the literature, with a short
statement of what is assumed) or ``derived`` (a formula applied to other
entries).  Constraints between entries are checked exactly when added.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ExcludedCase, LedgerInconsistency, RangeError, UnknownPiSpec
from .gf import field_make
from .hecke import (
    KINDS,
    TRIVIAL,
    PiSpec,
    candidates,
    hecke_shadow,
    module_M,
    parse_pi_spec,
    principal_partner,
    r1_module,
)
from .presalg import ext1_dim, hom_dim, is_isomorphic

PROVENANCES = ("computed", "cited", "derived")
PRIMES = (3, 5, 7)


@dataclass(frozen=True)
class Entry:
    value: int
    provenance: str
    note: str = ""


@dataclass(frozen=True)
class Constraint:
    """``sum(lhs) op sum(rhs)``; each side a tuple of (coefficient, entry name)."""

    label: str
    lhs: tuple[tuple[int, str], ...]
    op: str
    rhs: tuple[tuple[int, str], ...]


@dataclass
class DimLedger:
    entries: dict[str, Entry] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)

    def set(self, name: str, value: int, provenance: str, note: str = "") -> int:
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        if provenance == "cited" and not note:
            raise ValueError(f"cited entry {name!r} needs a note stating what is assumed")
        if name in self.entries and self.entries[name].value != value:
            raise LedgerInconsistency(
                f"{name}: {self.entries[name].value} ({self.entries[name].provenance}) "
                f"vs {value} ({provenance})"
            )
        self.entries[name] = Entry(int(value), provenance, note)
        return int(value)

    def __getitem__(self, name: str) -> int:
        return self.entries[name].value

    def _side(self, terms) -> int:
        return sum(c * self[n] for c, n in terms)

    def require(self, label: str, lhs, op: str, rhs) -> None:
        def norm(side):
            if isinstance(side, str):
                return ((1, side),)
            return tuple((1, t) if isinstance(t, str) else t for t in side)

        c = Constraint(label, norm(lhs), op, norm(rhs))
        self.constraints.append(c)
        if not self.holds(c):
            raise LedgerInconsistency(
                f"{label}: {self._side(c.lhs)} {op} {self._side(c.rhs)} fails"
            )

    def holds(self, c: Constraint) -> bool:
        a, b = self._side(c.lhs), self._side(c.rhs)
        return {"==": a == b, "<=": a <= b, ">=": a >= b}[c.op]

    def closes(self) -> bool:
        return all(self.holds(c) for c in self.constraints)

    def rows(self) -> list[dict]:
        return [
            {"name": k, "value": e.value, "provenance": e.provenance, "note": e.note}
            for k, e in sorted(self.entries.items())
        ]

    def constraint_rows(self) -> list[dict]:
        def show(side):
            return " + ".join(n if c == 1 else f"{c}*{n}" for c, n in side)

        return [
            {"label": c.label, "relation": f"{show(c.lhs)} {c.op} {show(c.rhs)}",
             "holds": int(self.holds(c))}
            for c in self.constraints
        ]


# ---------------------------------------------------------------------------
# Galois side


class _Excluded:
    def __repr__(self) -> str:
        return "EXCLUDED"

    def __bool__(self) -> bool:
        return False


EXCLUDED = _Excluded()


def euler_h1(dim_v: int, h0: int, h2: int) -> int:
    """-h0 + h1 - h2 = dim V solved for h1."""
    if min(dim_v, h0, h2) < 0:
        raise RangeError("dimensions must be non-negative")
    return dim_v + h0 + h2


def adjoint_dims(p: int, r: int):
    """Cohomology dimensions of the adjoint representation of an irreducible
    two-dimensional mod-p Galois representation of weight r.  EXCLUDED for
    (p, r) = (3, 1), where the representation is isomorphic to its twist by the
    cyclotomic character and h^2 does not vanish."""
    if p <= 2:
        raise RangeError("p must be odd")
    if not (0 <= r <= p - 1):
        raise RangeError(f"r = {r} outside 0..{p - 1}")
    if (p, r) == (3, 1):
        return EXCLUDED
    h0, h2 = 1, 0
    return {"h0": h0, "h2": h2, "h1_Ad": euler_h1(4, h0, h2), "h1_Ad0": euler_h1(3, 0, h2)}


# ---------------------------------------------------------------------------
# self-extensions of a supersingular representation


def _check_pr(p: int, r: int) -> None:
    if p not in PRIMES:
        raise RangeError(f"p = {p} outside {PRIMES}")
    if not (0 <= r <= p - 1):
        raise RangeError(f"r = {r} outside 0..{p - 1}")


def main_theorem_assembly(p: int, r: int) -> DimLedger:
    """Assemble dim Ext^1 with fixed central character (= 3) and without it (= 5)
    for the supersingular representation of weight r."""
    _check_pr(p, r)
    if (p, r) == (3, 1):
        raise ExcludedCase("(p, r) = (3, 1): the representation is a twist of itself by omega")
    F = field_make(p)
    L = DimLedger()
    pi = module_M(r, 0, TRIVIAL, F)
    R1 = r1_module(PiSpec("supersingular", r), F)
    L.set("ext1_H_self", ext1_dim(pi, pi), "computed", "Ext^1 of the Hecke shadow with itself")
    L.set("hom_to_R1", hom_dim(pi, R1), "computed", "Hom from the shadow into R^1 of invariants")
    L.set("ext1_Gz_target", 3, "cited", "dimension of Ext^1 with fixed central character")
    if r in (0, p - 1):
        L.set("ext2_H", 0, "cited", "Hecke Ext^i of the shadow vanishes for i > 1 in the Iwahori case")
        L.set("ext1_Gz", L["ext1_H_self"] + L["hom_to_R1"], "derived",
              "five-term sequence with the Ext^2 term zero")
        L.require("five-term sequence closes", "ext1_Gz", "==", ("ext1_H_self", "hom_to_R1"))
    else:
        L.set("ext1_Gz_lower", 3, "cited", "lower bound from explicit extensions")
        L.set("ext1_Gz_upper", 3, "cited", "upper bound from the chi-isotypic count")
        L.set("ext1_Gz", 3, "derived", "lower bound equals upper bound")
        L.require("lower bound", "ext1_Gz_lower", "<=", "ext1_Gz")
        L.require("upper bound", "ext1_Gz", "<=", "ext1_Gz_upper")
        L.require("Hecke Ext^1 injects", "ext1_H_self", "<=", "ext1_Gz")
        L.require("five-term sequence bound", "ext1_Gz", "<=", ("ext1_H_self", "hom_to_R1"))
    L.require("fixed central character", "ext1_Gz", "==", "ext1_Gz_target")
    L.set("hom_Z", 2, "cited", "dim Hom(Z, F_p) forced by the two headline dimensions")
    L.set("ext1_G", L["ext1_Gz"] + L["hom_Z"], "derived", "central-character sequence")
    L.require("central-character sequence", "ext1_G", "==", ("ext1_Gz", "hom_Z"))
    L.set("ext1_G_target", 5, "cited", "dimension of Ext^1 without central character")
    L.require("free central character", "ext1_G", "==", "ext1_G_target")
    ad = adjoint_dims(p, r)
    L.set("h1_Ad", ad["h1_Ad"], "derived", "local Euler characteristic")
    L.set("h1_Ad0", ad["h1_Ad0"], "derived", "local Euler characteristic")
    L.require("matches Galois deformations", "ext1_G", "==", "h1_Ad")
    L.require("matches fixed-determinant deformations", "ext1_Gz", "==", "h1_Ad0")
    return L


# ---------------------------------------------------------------------------
# classification tables


def central_unit(spec: PiSpec, p: int) -> int:
    """Exponent of omega giving the central character on units."""
    return (spec.r + 2 * spec.eta.u) % (p - 1)


@lru_cache(maxsize=None)
def _candidates(p: int, zeta_unit: int) -> tuple[PiSpec, ...]:
    return tuple(candidates(p, zeta_unit))


def _is_reducible_partner(spec: PiSpec, p: int) -> bool:
    if spec.kind != "principal":
        return False
    partner = principal_partner(spec, p)
    return partner.r == 0 and partner.lam % p in (1, p - 1)


def classification_table(p: int, pi_spec: PiSpec | str) -> list[dict]:
    """Rows {tau, d, ...} with d = dim Ext^1 (fixed central character) of tau
    by pi > 0, over candidate irreducibles tau with the same central character."""
    spec = parse_pi_spec(pi_spec) if isinstance(pi_spec, str) else pi_spec
    if spec.kind not in KINDS:
        raise UnknownPiSpec(spec.kind)
    if p not in PRIMES:
        raise RangeError(f"p = {p} outside {PRIMES}")
    F = field_make(p)
    pi = hecke_shadow(spec, F)
    R1 = r1_module(spec, F)
    rows = []
    for tau in _candidates(p, central_unit(spec, p)):
        T = hecke_shadow(tau, F)
        is_self = T.dim == pi.dim and is_isomorphic(T, pi)
        hom = hom_dim(T, R1)
        ext = ext1_dim(T, pi)
        flags = []
        if spec.kind == "supersingular":
            if is_self:
                d = main_theorem_assembly(p, spec.r)["ext1_Gz"]
                provenance = "cited"
            else:
                if ext:
                    raise LedgerInconsistency(f"Hecke Ext^1({tau.label(p)}, {spec.label(p)}) = {ext} != 0")
                d, provenance = hom, "computed"
        else:
            d, provenance = ext + hom, "computed"
        if d == 0:
            continue
        if hom and p == 3 and spec.kind == "trivial":
            flags.append("p3-special")
        if hom and not is_self and _is_reducible_partner(spec, p):
            flags.append("reducible-partner")
        rows.append({
            "left": spec.label(p) if is_self else tau.label(p),
            "right": spec.label(p),
            "d": d,
            "hom": hom,
            "ext1": ext,
            "self": int(is_self),
            "spec": (spec if is_self else tau).text(p),
            "flags": ",".join(flags),
            "provenance": provenance,
        })
    rows.sort(key=lambda row: (-row["self"], row["left"]))
    return rows


def principal_sweep(p: int) -> list[PiSpec]:
    """pi(r, lam) with 1 <= r <= p-1, lam in F_p^x, excluding the reducible (p-1, +-1)."""
    return [
        PiSpec("principal", r, lam)
        for r in range(1, p)
        for lam in range(1, p)
        if not (r == p - 1 and lam in (1, p - 1))
    ]


def supersingular_sweep(p: int) -> list[PiSpec]:
    return [PiSpec("supersingular", r) for r in range(p) if (p, r) != (3, 1)]


def sweep_specs(p: int) -> list[PiSpec]:
    return [PiSpec("trivial"), PiSpec("steinberg"), *principal_sweep(p), *supersingular_sweep(p)]


__all__ = [
    "DimLedger", "Entry", "Constraint", "EXCLUDED", "euler_h1", "adjoint_dims",
    "main_theorem_assembly", "classification_table", "principal_sweep",
    "supersingular_sweep", "sweep_specs", "central_unit",
]
