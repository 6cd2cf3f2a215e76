"""Element expressions for the command line and golden files.

::

    expr     := ['-'] term (('+' | '-') term)*
    term     := [rational '*'] atom
    atom     := 't^' int '*' SYM | 't*' SYM | SYM | 'c' | 'd'
    rational := int ['/' posint]

``t*SYM`` is shorthand for ``t^1*SYM`` (the form used when printing), and
a lone ``0`` is the zero element.
Loop atoms, ``c`` and ``d`` are only meaningful in affine algebras.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from .core import LieElement, accumulate


class ExpressionSyntaxError(SyntaxError):
    """Malformed expression; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, source: str, position: int):
        super().__init__(f"{message} at position {position}: {source!r}")
        self.position = position
        self.source = source


class UnknownSymbol(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown symbol {self.name!r}"


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str) -> List[Token]:
    out: List[Token] = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            pos += len(src[pos:]) - len(src[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {src[pos]!r}", src, pos)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, src: str, alg):
        self.src = src
        self.alg = alg
        self.toks = tokenize(src)
        self.i = 0

    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ExpressionSyntaxError(f"expected {text or kind}, found end of input", self.src, len(self.src))
        if tok.kind != kind or (text is not None and tok.text != text):
            raise ExpressionSyntaxError(f"expected {text or kind}, found {tok.text!r}", self.src, tok.pos)
        self.i += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def parse(self) -> Dict:
        if not self.toks:
            raise ExpressionSyntaxError("empty expression", self.src, 0)
        acc: Dict = {}
        if len(self.toks) == 1 and self.toks[0].kind == "int" and self.toks[0].text == "0":
            return acc
        sign = 1
        if self.at("op", "-"):
            self.take("op")
            sign = -1
        while True:
            coeff, sym = self.term()
            accumulate(acc, sym, sign * coeff)
            if self.peek() is None:
                return acc
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.take("op")
                sign = 1 if tok.text == "+" else -1
            else:
                raise ExpressionSyntaxError(f"expected '+' or '-', found {tok.text!r}", self.src, tok.pos)

    def term(self):
        coeff = Fraction(1)
        if self.at("int"):
            num = int(self.take("int").text)
            den = 1
            if self.at("op", "/"):
                self.take("op")
                tok = self.take("int")
                den = int(tok.text)
                if den == 0:
                    raise ExpressionSyntaxError("zero denominator", self.src, tok.pos)
            coeff = Fraction(num, den)
            self.take("op", "*")
        return coeff, self.atom()

    def atom(self):
        tok = self.take("name")
        if tok.text == "t" and (self.at("op", "^") or self.at("op", "*")):
            n = 1
            if self.at("op", "^"):
                self.take("op")
                neg = False
                if self.at("op", "-"):
                    self.take("op")
                    neg = True
                n = int(self.take("int").text) * (-1 if neg else 1)
            self.take("op", "*")
            name = self.take("name").text
            return resolve(self.alg, name, n)
        return resolve(self.alg, tok.text, None)


def resolve(alg, name: str, degree: int | None):
    """Basis symbol for ``name`` (at loop ``degree`` when given)."""
    from .affine import C_SYM, D_SYM, AffineLoopAlgebra

    if isinstance(alg, AffineLoopAlgebra):
        if degree is None and name == "c":
            return C_SYM
        if degree is None and name == "d":
            return D_SYM
        try:
            return (0, degree or 0, alg.finite.symbol(name))
        except KeyError:
            raise UnknownSymbol(name) from None
    if degree is not None:
        raise UnknownSymbol(f"t^{degree}*{name}")
    try:
        return alg.symbol(name)
    except KeyError:
        raise UnknownSymbol(name) from None


def parse_element(src: str, alg) -> LieElement:
    return LieElement(alg, _Parser(src, alg).parse())


def parse_symbol(src: str, alg):
    """A single basis symbol, e.g. ``t^2*E1`` or ``c``."""
    p = _Parser(src, alg)
    sym = p.atom()
    if p.peek() is not None:
        tok = p.peek()
        raise ExpressionSyntaxError(f"trailing input {tok.text!r}", src, tok.pos)
    return sym
