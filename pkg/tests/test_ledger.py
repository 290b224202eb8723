from __future__ import annotations

import pytest

import heckext.ledger as ledger
from heckext.errors import ExcludedCase, LedgerInconsistency, RangeError, UnknownPiSpec
from heckext.gf import field_make
from heckext.hecke import PiSpec, candidates, hecke_shadow, parse_pi_spec, principal_partner, r1_module
from heckext.ledger import (
    EXCLUDED,
    DimLedger,
    adjoint_dims,
    central_unit,
    classification_table,
    euler_h1,
    main_theorem_assembly,
    principal_sweep,
    sweep_specs,
)
from heckext.presalg import ext1_dim, hom_dim, is_isomorphic


@pytest.mark.parametrize("args,h1", [((4, 1, 0), 5), ((3, 0, 0), 3), ((1, 1, 1), 3)])
def test_euler(args, h1):
    assert euler_h1(*args) == h1


def test_euler_rejects_negative():
    with pytest.raises(RangeError):
        euler_h1(-1, 0, 0)


@pytest.mark.parametrize("p,r", [(5, 2), (7, 0), (3, 0), (7, 6)])
def test_adjoint_dims(p, r):
    assert adjoint_dims(p, r) == {"h0": 1, "h2": 0, "h1_Ad": 5, "h1_Ad0": 3}


def test_adjoint_excluded():
    assert adjoint_dims(3, 1) is EXCLUDED
    assert not EXCLUDED


def test_main_theorem_iwahori_case():
    L = main_theorem_assembly(5, 0)
    assert (L["ext1_H_self"], L["hom_to_R1"], L["ext1_Gz"], L["ext1_G"]) == (1, 2, 3, 5)
    assert L.entries["ext1_H_self"].provenance == "computed"
    assert L.entries["ext2_H"].provenance == "cited"
    assert L.entries["ext1_Gz"].provenance == "derived"
    assert L.closes()


def test_main_theorem_regular_case():
    L = main_theorem_assembly(5, 2)
    assert L["ext1_H_self"] == 2
    assert (L["ext1_Gz_lower"], L["ext1_Gz_upper"]) == (3, 3)
    assert "ext2_H" not in L.entries
    assert all(row["holds"] for row in L.constraint_rows())


def test_main_theorem_excluded():
    with pytest.raises(ExcludedCase):
        main_theorem_assembly(3, 1)
    with pytest.raises(RangeError):
        main_theorem_assembly(11, 0)


def test_assembly_aborts_on_contradiction(monkeypatch):
    monkeypatch.setattr(ledger, "hom_dim", lambda M, N: 1)
    with pytest.raises(LedgerInconsistency):
        main_theorem_assembly(5, 0)


def test_ledger_guards():
    L = DimLedger()
    L.set("a", 1, "computed")
    L.set("a", 1, "derived")
    with pytest.raises(LedgerInconsistency):
        L.set("a", 2, "computed")
    with pytest.raises(ValueError):
        L.set("b", 1, "cited")
    with pytest.raises(ValueError):
        L.set("b", 1, "guessed")
    L.set("b", 2, "cited", "assumed")
    L.require("ok", "a", "<=", "b")
    with pytest.raises(LedgerInconsistency):
        L.require("bad", ("a", "a", "a"), "==", "b")
    assert not L.closes()


def test_classification_examples():
    pairs = lambda rows: [(r["left"], r["d"]) for r in rows]  # noqa: E731
    assert pairs(classification_table(5, "steinberg")) == [("1", 2)]
    assert pairs(classification_table(5, "trivial")) == [("Sp", 1), ("pi(2,1,w)", 1)]
    assert pairs(classification_table(5, "supersingular(2)")) == [("pi(2,0)", 3)]
    assert pairs(classification_table(7, "principal(1,2)")) == [("pi(1,2)", 2), ("pi(3,4,w^2)", 1)]


def _d(p, spec, tau):
    """Extension dimension from the exact-sequence recipe, recomputed here."""
    F = field_make(p)
    pi, T, R1 = hecke_shadow(spec, F), hecke_shadow(tau, F), r1_module(spec, F)
    if spec.kind == "supersingular":
        return 3 if is_isomorphic(T, pi) else hom_dim(T, R1)
    return ext1_dim(T, pi) + hom_dim(T, R1)


@pytest.mark.parametrize("spec", ["trivial", "steinberg", "principal(2,3)", "principal(3,4)", "supersingular(1)"])
def test_classification_complete_and_positive(spec):
    p = 5
    s = parse_pi_spec(spec)
    rows = classification_table(p, s)
    assert all(r["d"] > 0 for r in rows)
    listed = {r["spec"]: r["d"] for r in rows}
    for tau in candidates(p, central_unit(s, p)):
        d = _d(p, s, tau)
        key = s.text(p) if is_isomorphic(hecke_shadow(tau, field_make(p)), hecke_shadow(s, field_make(p))) \
            else tau.text(p)
        assert listed.get(key, 0) == d


@pytest.mark.parametrize("p", [5, 7])
def test_partner_rows_are_mirrored(p):
    F = field_make(p)
    for spec in principal_sweep(p):
        rows = [r for r in classification_table(p, spec) if not r["self"]]
        if spec.r == p - 2 and spec.lam in (1, p - 1):
            assert rows == []
            continue
        (row,) = rows
        if row["flags"] == "reducible-partner":
            continue
        partner = parse_pi_spec(row["spec"])
        assert is_isomorphic(hecke_shadow(partner, F), hecke_shadow(principal_partner(spec, p), F))
        back = [r for r in classification_table(p, partner) if not r["self"]]
        assert len(back) == 1 and back[0]["d"] == 1
        assert is_isomorphic(hecke_shadow(parse_pi_spec(back[0]["spec"]), F), hecke_shadow(spec, F))


def test_flags():
    rows = classification_table(3, "trivial")
    assert [r["flags"] for r in rows] == ["", "p3-special"]
    rows = classification_table(5, "principal(2,1)")
    assert rows[1]["flags"] == "reducible-partner" and rows[1]["left"] == "Sp*w^3"


def test_classification_errors():
    with pytest.raises(UnknownPiSpec):
        classification_table(5, "cuspidal")
    with pytest.raises(RangeError):
        classification_table(11, "trivial")


def test_sweep_contents():
    specs = sweep_specs(5)
    assert PiSpec("principal", 4, 1) not in specs
    assert PiSpec("principal", 4, 2) in specs
    assert sum(s.kind == "principal" for s in specs) == 4 * 4 - 2
