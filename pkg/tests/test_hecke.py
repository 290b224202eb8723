from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckext.errors import RangeError, UnknownKind, UnknownPiSpec, UnsupportedCentralCharacter
from heckext.gf import FMat, field_make
from heckext.hecke import (
    OMEGA,
    TABLE_KINDS,
    TRIVIAL,
    AlgebraModule,
    PiSpec,
    SmoothChar,
    TorusCharacter,
    candidates,
    ext_table,
    hecke_shadow,
    module_E,
    module_M,
    module_sp,
    module_triv,
    parse_pi_spec,
    principal_partner,
    r1_module,
    torus_isotype,
)
from heckext.presalg import (
    ext1_dim,
    hom_dim,
    is_isomorphic,
    module_check,
    quotient_module,
    submodule,
)

ETAS = [TRIVIAL, SmoothChar(0, -1), OMEGA, SmoothChar(2, -1)]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_every_shadow_satisfies_the_relations(p):
    F = field_make(p)
    for r, lam, eta in itertools.product(range(p), range(p), ETAS):
        M = module_M(r, lam, eta, F)
        assert module_check(M.algebra, M) == []
    for eta in ETAS:
        for build in (module_triv, module_sp):
            M = build(eta, F)
            assert module_check(M.algebra, M) == []
    for r in range(1, p - 1):
        for l1, l2 in itertools.product(range(p), repeat=2):
            E = module_E(l1, l2, r, TRIVIAL, F)
            assert module_check(E.algebra, E) == []


def test_perturbed_module_fails_relations():
    F = field_make(5)
    M = module_M(2, 0, TRIVIAL, F)
    bad_tns = M["Tns"].data.copy()
    bad_tns[0, 0] = 1
    action = dict(M.action, Tns=FMat(F, bad_tns))
    assert module_check(M.algebra, AlgebraModule(M.algebra, 2, action))


def test_e_module_is_an_extension_of_the_shadow():
    F = field_make(5)
    for r in (1, 2, 3):
        pi = module_M(r, 0, TRIVIAL, F)
        E = module_E(2, 3, r, TRIVIAL, F)
        S = submodule(E, FMat(F, np.eye(4, dtype=np.int64)[:2]))
        assert is_isomorphic(S.module, pi)
        assert is_isomorphic(quotient_module(E, S), pi)


@pytest.mark.parametrize("p,k", [(3, 2), (5, 2)])
def test_dimensions_stable_under_field_extension(p, k):
    F, K = field_make(p), field_make(p, k)
    for r in range(p):
        a, b = module_M(r, 0, TRIVIAL, F), module_M(r, 0, TRIVIAL, K)
        assert ext1_dim(a, a) == ext1_dim(b, b)
        assert hom_dim(a, a) == hom_dim(b, b)


@pytest.mark.parametrize("p", [5, 7])
def test_torus_isotypes(p):
    F = field_make(p)
    for r in range(p):
        chi = TorusCharacter(r, 0, p)
        iso = torus_isotype(module_M(r, 1, TRIVIAL, F))
        assert iso == ({chi: 2} if chi == chi.swap else {chi: 1, chi.swap: 1})


def test_sp_trivial_twists():
    F = field_make(5)
    for eta in ETAS:
        one, sp = module_triv(eta, F), module_sp(eta, F)
        assert ext1_dim(one, sp) == ext1_dim(sp, one) == 1
        assert hom_dim(one, sp) == 0


chars5 = st.builds(TorusCharacter, st.integers(-20, 20), st.integers(-20, 20), st.just(5))


@given(chars5, chars5, st.integers(1, 4), st.integers(1, 4))
def test_torus_character_is_a_homomorphism(a, b, x, y):
    assert (a * b)(x, y) == a(x, y) * b(x, y) % 5
    assert (a * a.inverse()) == TorusCharacter.trivial(5)
    assert a.swap.swap == a
    assert (a**3) == a * a * a


def test_character_labels():
    assert TorusCharacter.alpha(5).label() == "a"
    assert TorusCharacter.alpha(5).inverse().label() == "a^-1"
    assert TorusCharacter.alpha(3).label() == "a"
    assert TorusCharacter(1, 0, 5).label() == "(1,0)"
    assert SmoothChar(3, -1).label(5) == "w^3*mu-1"
    assert SmoothChar(0, 1).label(5) == "1"


@pytest.mark.parametrize(
    "text,spec",
    [
        ("trivial", PiSpec("trivial")),
        ("Sp", PiSpec("steinberg")),
        ("principal(2,3)", PiSpec("principal", 2, 3)),
        ("principal(2, 3, w)", PiSpec("principal", 2, 3, SmoothChar(1, 1))),
        ("supersingular(4)", PiSpec("supersingular", 4)),
        ("supersingular(1,mu-1)", PiSpec("supersingular", 1, 0, SmoothChar(0, -1))),
    ],
)
def test_parse_pi_spec(text, spec):
    assert parse_pi_spec(text) == spec


@pytest.mark.parametrize("text", ["cuspidal(1)", "principal(1)", "principal(a,b)", "supersingular(1,2,3)"])
def test_parse_pi_spec_rejects(text):
    with pytest.raises(UnknownPiSpec):
        parse_pi_spec(text)


@pytest.mark.parametrize("p", [5, 7])
def test_partner_is_an_involution(p):
    F = field_make(p)
    for r in range(1, p - 1):
        for lam in range(1, p):
            spec = PiSpec("principal", r, lam)
            back = principal_partner(principal_partner(spec, p), p)
            if principal_partner(spec, p).r == 0:
                continue
            assert is_isomorphic(hecke_shadow(back, F), hecke_shadow(spec, F))


@pytest.mark.parametrize("p", [3, 5])
def test_candidates_are_distinct_with_matching_centre(p):
    F = field_make(p)
    for zeta in range(p - 1):
        mods = [hecke_shadow(s, F) for s in candidates(p, zeta)]
        for M in mods:
            assert M.algebra == mods[0].algebra
        for M, N in itertools.combinations(mods, 2):
            assert not (M.dim == N.dim and is_isomorphic(M, N))


def test_r1_modules():
    F = field_make(5)
    assert r1_module("supersingular(2)", F).dim == 4
    assert r1_module("trivial", F).name == "M(2,1,w)"
    assert r1_module("steinberg", F).name == "M(4,1,1)"
    assert r1_module("principal(1,2)", F).dim == 4
    # the partner of pi(p-2, +-1) is pi itself
    assert r1_module("principal(3,1)", F).dim == 2


def test_errors():
    F = field_make(5)
    with pytest.raises(RangeError):
        module_M(5, 0, TRIVIAL, F)
    with pytest.raises(RangeError):
        module_E(1, 1, 0, TRIVIAL, F)
    with pytest.raises(UnsupportedCentralCharacter):
        module_M(1, 0, SmoothChar(0, 2), F)
    with pytest.raises(UnknownKind):
        ext_table(5, "nope")
    with pytest.raises(UnknownPiSpec):
        hecke_shadow(PiSpec("principal", 1, 0), F)


@pytest.mark.parametrize("kind", TABLE_KINDS)
def test_tables_have_the_csv_columns(kind):
    rows = ext_table(5, kind)
    assert rows
    for row in rows:
        assert {"left", "right", "hom", "ext1", "provenance"} <= set(row)
        assert row["provenance"] == "computed"
