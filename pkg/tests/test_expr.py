from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckext.errors import ExprSyntaxError
from heckext.expr import evaluate, parse, parse_eta, tokenize
from heckext.gf import field_make
from heckext.hecke import TRIVIAL, SmoothChar, module_M
from heckext.presalg import ext1_dim, is_isomorphic


@pytest.mark.parametrize(
    "text,eta",
    [("1", TRIVIAL), ("mu-1", SmoothChar(0, -1)), ("w", SmoothChar(1, 1)), ("w^3", SmoothChar(3, 1)),
     ("w^-1", SmoothChar(-1, 1)), ("w^2*mu-1", SmoothChar(2, -1))],
)
def test_eta_tokens(text, eta):
    assert parse_eta(text) == eta


def test_terms_and_sums():
    terms = parse(" M(2, 0) + E(1,-1;2) + I(Sp, w) + I(1) ")
    assert [t.kind for t in terms] == ["M", "E", "ISp", "I1"]
    assert terms[1].args == (1, -1, 2)


def test_evaluate_builds_modules():
    F = field_make(5)
    M = evaluate("M(2,0,1)", F)
    assert is_isomorphic(M, module_M(2, 0, TRIVIAL, F))
    S = evaluate("M(2,0) + M(2,0)", F)
    assert S.dim == 4
    assert ext1_dim(S, M) == 4
    assert evaluate("E(1,2;2)", F).dim == 4


@pytest.mark.parametrize(
    "text,pos",
    [("M(2,0,1", 7), ("M(2;0)", 3), ("X(1)", 0), ("M(2,0)+", 7), ("I(2)", 2), ("M(2,0,q)", 6),
     ("M(2,0) M(2,0)", 7)],
)
def test_errors_report_position(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


ints = st.integers(0, 4)
eta_text = st.sampled_from(["1", "mu-1", "w", "w^2", "w^-1*mu-1"])
term_text = st.one_of(
    st.builds(lambda r, l, e: f"M({r},{l},{e})", ints, ints, eta_text),
    st.builds(lambda r, l: f"M({r},{l})", ints, ints),
    st.builds(lambda a, b, r: f"E({a},-{b};{r})", ints, ints, st.integers(1, 3)),
    st.builds(lambda k, e: f"I({k},{e})", st.sampled_from(["1", "Sp"]), eta_text),
)


@given(st.lists(term_text, min_size=1, max_size=4), st.sampled_from(["", " ", "  "]))
def test_whitespace_insensitive(terms, pad):
    text = "+".join(terms)
    spaced = (pad + "+" + pad).join(pad + t.replace(",", pad + "," + pad) for t in terms)
    def shape(ts):
        return [(t.kind, t.args) for t in ts]

    assert shape(parse(text)) == shape(parse(spaced))
    assert len(parse(text)) == len(terms)


def test_tokenizer_end_marker():
    toks = tokenize("M(1,2)")
    assert toks[-1].kind == "end"
    assert [t.value for t in toks[:-1]] == ["M", "(", "1", ",", "2", ")"]
