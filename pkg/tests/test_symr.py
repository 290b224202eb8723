from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from heckext.errors import RangeError, SingularMatrix, VerificationFailed
from heckext.symr import (
    SymPoly,
    top_power_sides,
    f_closed_form,
    f_sum,
    sweep,
    sym_act,
    twisted_sum,
    verify_relations,
    w_sigma,
    w_sigma_check,
    x_power,
    x_power_binomial,
)


def evaluate(P: SymPoly, x: int, y: int) -> int:
    return sum(c * pow(x, j, P.p) * pow(y, P.r - j, P.p) for j, c in enumerate(P.coeffs)) % P.p


def as_function(P: SymPoly) -> tuple[int, ...]:
    return tuple(evaluate(P, x, y) for x in range(P.p) for y in range(P.p))


@st.composite
def poly_and_matrix(draw):
    p = draw(st.sampled_from([3, 5, 7]))
    r = draw(st.integers(0, p - 1))
    a = draw(st.integers(0, p - 2))
    coeffs = tuple(draw(st.lists(st.integers(0, p - 1), min_size=r + 1, max_size=r + 1)))
    g = [[draw(st.integers(0, p - 1)) for _ in range(2)] for _ in range(2)]
    return SymPoly(p, r, a, coeffs), g


@given(poly_and_matrix())
def test_action_matches_substitution(data):
    P, ((a, b), (c, d)) = data
    p = P.p
    det = (a * d - b * c) % p
    assume(det)
    Q = sym_act(((a, b), (c, d)), P)
    for x in range(p):
        for y in range(p):
            want = pow(det, P.a, p) * evaluate(P, (a * x + c * y) % p, (b * x + d * y) % p) % p
            assert evaluate(Q, x, y) == want


@given(poly_and_matrix(), poly_and_matrix())
def test_action_is_a_left_action(d1, d2):
    P, g = d1
    _, h = d2
    p = P.p
    h = [[x % p for x in row] for row in h]
    gh = [[sum(g[i][k] * h[k][j] for k in range(2)) % p for j in range(2)] for i in range(2)]
    try:
        lhs = sym_act(g, sym_act(h, P))
    except SingularMatrix:
        return
    assume((gh[0][0] * gh[1][1] - gh[0][1] * gh[1][0]) % p)
    assert lhs == sym_act(gh, P)


def test_polynomials_are_determined_by_values():
    seen = {}
    p, r = 5, 4
    for j in range(r + 1):
        P = SymPoly.monomial(p, r, 0, j)
        assert as_function(P) not in seen
        seen[as_function(P)] = j


@given(poly_and_matrix(), st.integers(0, 8))
def test_x_power_binomial_expansion(data, k):
    P, _ = data
    assert x_power(P, k) == x_power_binomial(P, k)


# values computed once by hand-checked direct summation and frozen
@pytest.mark.parametrize(
    "p,r,a,j,coeffs",
    [(5, 3, 0, 1, (0, 2, 0, 0)), (3, 2, 0, 0, (2, 0, 2)), (5, 0, 0, 0, (4,)), (7, 6, 1, 0, (1, 0, 0, 0, 0, 0, 1))],
)
def test_f_sum_frozen_values(p, r, a, j, coeffs):
    assert f_sum(p, r, a, j).coeffs == coeffs


@pytest.mark.parametrize("p,r,a,coeffs", [(5, 3, 1, (0, 0, 0, 4)), (7, 6, 0, (0, 0, 0, 0, 0, 0, 6))])
def test_top_power_frozen_values(p, r, a, coeffs):
    lhs, rhs = top_power_sides(p, r, a)
    assert lhs.coeffs == coeffs == rhs.coeffs


def test_twisted_sum_direct_oracle():
    """Sum of the functions lambda^e (u(lambda) s x^r)(x, y) = lambda^e (lambda x + y)^r, by
    plain evaluation."""
    for p in (3, 5, 7):
        for r in range(p):
            for e in range(p):
                S = twisted_sum(p, r, 0, e)
                for x in range(p):
                    for y in range(p):
                        total = sum((1 if e == 0 else pow(lam, e, p)) * pow((lam * x + y) % p, r, p)
                                    for lam in range(p)) % p
                        assert evaluate(S, x, y) == total


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_sweep(p):
    assert all(sweep(p).values())


@pytest.mark.parametrize("which", ["rel", "trel", "relX"])
def test_perturbation_is_detected(which):
    for p, r, a in [(5, 2, 1), (7, 3, 0)]:
        out = verify_relations(p, r, a, perturb=which)
        assert out[which] is False
        assert all(v for k, v in out.items() if k != which)


def test_closed_form_mismatch_raises(monkeypatch):
    import heckext.symr as symr

    monkeypatch.setattr(symr, "f_closed_form", lambda p, r, a, j: SymPoly.zero(p, r, a))
    with pytest.raises(VerificationFailed):
        symr.f_sum(5, 2, 0, 1)


def test_w_sigma():
    assert w_sigma_check(5, 3, 2)
    assert not w_sigma(5, 3, 2).is_zero()
    with pytest.raises(RangeError):
        w_sigma(5, 0, 0)


@pytest.mark.parametrize("args", [(5, 5, 0, 0), (5, 2, 4, 0), (5, 2, 0, 3)])
def test_range_errors(args):
    with pytest.raises(RangeError):
        f_sum(*args)


def test_singular_action():
    with pytest.raises(SingularMatrix):
        sym_act(((1, 1), (1, 1)), SymPoly.monomial(5, 2, 0, 1))


def test_str():
    assert str(f_closed_form(5, 3, 0, 1)) == "2xy^2"
    assert str(SymPoly.zero(3, 1, 0)) == "0"
