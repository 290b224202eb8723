"""Module-expression mini-language.

EBNF (whitespace is ignored between tokens)::

    expr    = term { "+" term } ;
    term    = "M" "(" int "," scalar [ "," eta ] ")"
            | "E" "(" scalar "," scalar ";" int ")"
            | "I" "(" ( "1" | "Sp" ) [ "," eta ] ")" ;
    scalar  = [ "-" ] int ;
    eta     = "1" | "mu-1" | omega [ "*" "mu-1" ] ;
    omega   = "w" [ "^" [ "-" ] int ] ;

``M(r,lam,eta)`` is the two-dimensional module M(r, lam, eta); ``E(l1,l2;r)``
the four-dimensional self-extension of M(r,0,1); ``I(1)`` and ``I(Sp)`` the
one-dimensional modules of the trivial and Steinberg representations (twisted
by ``eta`` when given); ``+`` is direct sum.  ``w`` is the mod-p cyclotomic
character and ``mu-1`` the unramified character sending p to -1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ExprSyntaxError
from .gf import Field
from .hecke import SmoothChar, TRIVIAL, module_E, module_M, module_sp, module_triv
from .presalg import AlgebraModule, direct_sum

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<mu>mu-1)|(?P<name>Sp|[MEIw])|(?P<punct>[(),;+^*-]))")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


@dataclass(frozen=True)
class Term:
    kind: str  # "M", "E", "I1", "ISp"
    args: tuple
    pos: int


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.cur
        found = repr(tok.value) if tok.kind != "end" else "end of input"
        raise ExprSyntaxError(f"{msg}, found {found}", self.text, tok.pos)

    def take(self, value: str) -> Token:
        if self.cur.value != value or self.cur.kind == "end":
            self.fail(f"expected {value!r}")
        tok = self.cur
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.cur.kind != "end" and self.cur.value == value:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        if self.cur.kind != "int":
            self.fail("expected an integer")
        v = int(self.cur.value)
        self.i += 1
        return v

    def scalar(self) -> int:
        neg = self.accept("-")
        v = self.integer()
        return -v if neg else v

    def eta(self) -> SmoothChar:
        tok = self.cur
        if tok.kind == "int":
            if tok.value != "1":
                self.fail("expected a character (1, w, w^k, mu-1, w^k*mu-1)")
            self.i += 1
            return TRIVIAL
        if tok.kind == "mu":
            self.i += 1
            return SmoothChar(0, -1)
        if tok.value == "w":
            self.i += 1
            u = 1
            if self.accept("^"):
                u = self.scalar()
            vp = 1
            if self.accept("*"):
                if self.cur.kind != "mu":
                    self.fail("expected 'mu-1'")
                self.i += 1
                vp = -1
            return SmoothChar(u, vp)
        self.fail("expected a character (1, w, w^k, mu-1, w^k*mu-1)")

    def term(self) -> Term:
        tok = self.cur
        if tok.value == "M":
            self.i += 1
            self.take("(")
            r = self.integer()
            self.take(",")
            lam = self.scalar()
            eta = TRIVIAL
            if self.accept(","):
                eta = self.eta()
            self.take(")")
            return Term("M", (r, lam, eta), tok.pos)
        if tok.value == "E":
            self.i += 1
            self.take("(")
            l1 = self.scalar()
            self.take(",")
            l2 = self.scalar()
            self.take(";")
            r = self.integer()
            self.take(")")
            return Term("E", (l1, l2, r), tok.pos)
        if tok.value == "I":
            self.i += 1
            self.take("(")
            if self.cur.value == "1" and self.cur.kind == "int":
                kind = "I1"
            elif self.cur.value == "Sp":
                kind = "ISp"
            else:
                self.fail("expected '1' or 'Sp'")
            self.i += 1
            eta = TRIVIAL
            if self.accept(","):
                eta = self.eta()
            self.take(")")
            return Term(kind, (eta,), tok.pos)
        self.fail("expected a module (M(...), E(...), I(...))")

    def parse(self) -> list[Term]:
        terms = [self.term()]
        while self.accept("+"):
            terms.append(self.term())
        if self.cur.kind != "end":
            self.fail("expected '+' or end of input")
        return terms


def parse(text: str) -> list[Term]:
    """Parse an expression into its direct summands."""
    return _Parser(text).parse()


def parse_eta(text: str) -> SmoothChar:
    p = _Parser(text)
    eta = p.eta()
    if p.cur.kind != "end":
        p.fail("trailing input after character")
    return eta


def build_term(t: Term, F: Field) -> AlgebraModule:
    if t.kind == "M":
        r, lam, eta = t.args
        return module_M(r, F(lam), eta, F)
    if t.kind == "E":
        l1, l2, r = t.args
        return module_E(F(l1), F(l2), r, TRIVIAL, F)
    if t.kind == "I1":
        return module_triv(t.args[0], F)
    return module_sp(t.args[0], F)


def evaluate(text: str, field: Field) -> AlgebraModule:
    """Parse and build the module over ``field`` (direct sums need a common
    central character)."""
    mods = [build_term(t, field) for t in parse(text)]
    if len(mods) == 1:
        return mods[0]
    return direct_sum(*mods)
