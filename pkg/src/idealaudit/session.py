"""Session files: ring and ideal declarations.

    ring R = QQ[x,y,z]/(x^2+y^5+z^5) dim 2
    ideal I = (x, y^3, y^2*z, y*z^2, z^3) in R

Whitespace (including newlines) is insignificant and ``#`` starts a comment.
Exponents use ``^``, products an explicit ``*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .groebner import RingPresentation
from .invariants import IdealHandle
from .polyarith import GF, QQ, FieldSpec, PolyRing, Polynomial, format_poly, is_prime

_TOKEN = re.compile(r"(?P<ws>\s+|#[^\n]*)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[\[\](),/^*+=-])")


class SessionError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column

    def to_dict(self) -> dict:
        return {"error": "parse", "message": self.message, "line": self.line, "column": self.column}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SessionError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise SessionError(message, tok.line, tok.column)

    def accept(self, text: str) -> Optional[Token]:
        if self.tok.text == text and self.tok.kind != "eof":
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return t

    def expect_kind(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {'an identifier' if kind == 'ident' else 'an integer'}, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    # poly := ["+"|"-"] term (("+"|"-") term)*
    def poly(self, ring: PolyRing) -> Polynomial:
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        total = self.term(ring).scale(sign)
        while self.tok.text in ("+", "-"):
            sign = -1 if self.expect(self.tok.text).text == "-" else 1
            total = total + self.term(ring).scale(sign)
        return total

    # term := coeff ["*" monomial] | monomial ; coeff := INT ["/" INT]
    def term(self, ring: PolyRing) -> Polynomial:
        if self.tok.kind == "int":
            num = int(self.expect_kind("int").text)
            coeff = Fraction(num)
            if self.tok.text == "/" and self.toks[self.i + 1].kind == "int":
                self.i += 1
                den_tok = self.expect_kind("int")
                if int(den_tok.text) == 0:
                    self.fail("zero denominator", den_tok)
                coeff = Fraction(num, int(den_tok.text))
            start = self.tok
            try:
                c = ring.field(coeff)
            except ZeroDivisionError as exc:
                self.fail(str(exc), start)
            if self.accept("*"):
                return self.monomial(ring).scale(c)
            return ring.const(c)
        return self.monomial(ring)

    def monomial(self, ring: PolyRing) -> Polynomial:
        exps = [0] * ring.nvars
        while True:
            t = self.expect_kind("ident")
            if t.text not in ring.names:
                self.fail(f"unknown variable {t.text!r}", t)
            e = 1
            if self.accept("^"):
                e = int(self.expect_kind("int").text)
            exps[ring.names.index(t.text)] += e
            if not (self.tok.text == "*" and self.toks[self.i + 1].kind == "ident"):
                return ring.monomial(exps)
            self.i += 1

    def poly_list(self, ring: PolyRing) -> List[Polynomial]:
        self.expect("(")
        out = [self.poly(ring)]
        while self.accept(","):
            out.append(self.poly(ring))
        self.expect(")")
        return out

    def field(self) -> FieldSpec:
        if self.accept("QQ"):
            return QQ
        t = self.tok
        if self.accept("GF"):
            self.expect("(")
            p_tok = self.expect_kind("int")
            self.expect(")")
            if not is_prime(int(p_tok.text)):
                self.fail(f"GF argument {p_tok.text} is not prime", p_tok)
            return GF(int(p_tok.text))
        self.fail(f"expected a field (QQ or GF(p)), found {t.text or 'end of input'!r}")


@dataclass(frozen=True)
class RingDecl:
    name: str
    presentation: RingPresentation
    line: int = 0


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    gens: Tuple[Polynomial, ...]
    line: int = 0


@dataclass
class SessionFile:
    rings: Dict[str, RingDecl] = field(default_factory=dict)
    ideals: Dict[str, IdealDecl] = field(default_factory=dict)

    def ring(self, name: str) -> RingPresentation:
        return self.rings[name].presentation

    def ideal(self, name: str) -> IdealHandle:
        try:
            decl = self.ideals[name]
        except KeyError:
            raise KeyError(f"no ideal named {name!r}") from None
        return IdealHandle(self.ring(decl.ring), decl.gens)

    def structure(self):
        """Comparable summary, independent of source positions."""
        rings = {n: (d.presentation.field, d.presentation.variables, d.presentation.relations, d.presentation.declared_dim) for n, d in self.rings.items()}
        ideals = {n: (d.ring, d.gens) for n, d in self.ideals.items()}
        return rings, ideals


def parse_session(text: str) -> SessionFile:
    P = _Parser(text)
    out = SessionFile()
    while P.tok.kind != "eof":
        start = P.tok
        if P.accept("ring"):
            name = P.expect_kind("ident")
            if name.text in out.rings:
                P.fail(f"ring {name.text!r} declared twice", name)
            P.expect("=")
            fld = P.field()
            P.expect("[")
            names = [P.expect_kind("ident").text]
            while P.accept(","):
                names.append(P.expect_kind("ident").text)
            P.expect("]")
            if len(set(names)) != len(names):
                P.fail("repeated variable name", start)
            PR = PolyRing(fld, names)
            rels = P.poly_list(PR) if P.accept("/") else []
            P.expect("dim")
            dim_tok = P.expect_kind("int")
            try:
                pres = RingPresentation(fld, tuple(names), tuple(rels), int(dim_tok.text))
            except ValueError as exc:
                P.fail(str(exc), start)
            out.rings[name.text] = RingDecl(name.text, pres, start.line)
        elif P.accept("ideal"):
            name = P.expect_kind("ident")
            if name.text in out.ideals:
                P.fail(f"ideal {name.text!r} declared twice", name)
            P.expect("=")
            # generators can only be read once the ring is known
            mark = P.i
            depth = 0
            while True:
                t = P.tok
                if t.kind == "eof":
                    P.fail("unterminated generator list")
                depth += (t.text == "(") - (t.text == ")")
                P.i += 1
                if depth == 0:
                    break
            P.expect("in")
            ring_tok = P.expect_kind("ident")
            if ring_tok.text not in out.rings:
                P.fail(f"unknown ring {ring_tok.text!r}", ring_tok)
            end = P.i
            P.i = mark
            gens = P.poly_list(out.ring(ring_tok.text).poly_ring)
            P.i = end
            out.ideals[name.text] = IdealDecl(name.text, ring_tok.text, tuple(gens), start.line)
        else:
            P.fail(f"expected 'ring' or 'ideal', found {start.text!r}")
    return out


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    P = _Parser(text)
    f = P.poly(ring)
    if P.tok.kind != "eof":
        P.fail(f"trailing input {P.tok.text!r}")
    return f


def format_ring(name: str, R: RingPresentation) -> str:
    s = f"ring {name} = {R.field}[{','.join(R.variables)}]"
    if R.relations:
        s += "/(" + ", ".join(format_poly(f) for f in R.relations) + ")"
    return f"{s} dim {R.declared_dim}"


def format_session(session: SessionFile) -> str:
    lines = [format_ring(n, d.presentation) for n, d in session.rings.items()]
    for n, d in session.ideals.items():
        lines.append(f"ideal {n} = (" + ", ".join(format_poly(g) for g in d.gens) + f") in {d.ring}")
    return "\n".join(lines) + "\n"
