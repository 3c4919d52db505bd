"""Recursive descent parser for polynomial expressions.

Grammar (``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" INT)?
    atom    := NUMBER ("/" NUMBER)? | NAME | "(" expr ")"

Implicit multiplication (``2x``, ``x y``) is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import MPoly, Ring


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


@dataclass
class Token:
    kind: str  # NUM, NAME, OP, END
    value: str
    pos: int


_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)")


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        start = pos
        if m.group(1) is not None:
            tokens.append(Token("NUM", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(Token("NAME", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append(Token("OP", ch, start))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.pos, self.text)

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, op: str) -> bool:
        if self.tok.kind == "OP" and self.tok.value == op:
            self.i += 1
            return True
        return False

    def parse(self) -> MPoly:
        if self.tok.kind == "END":
            self.error("empty expression")
        result = self.expr()
        if self.tok.kind != "END":
            if self.tok.kind in ("NUM", "NAME") or self.tok.value == "(":
                self.error("implicit multiplication is not allowed")
            if self.tok.value == "/":
                self.error("'/' is only allowed inside rational literals")
            self.error(f"unexpected {self.tok.value!r}")
        return result

    def expr(self) -> MPoly:
        result = self.term()
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> MPoly:
        result = self.unary()
        while self.accept("*"):
            result = result * self.unary()
        return result

    def unary(self) -> MPoly:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        if self.accept("^"):
            if self.tok.kind == "OP" and self.tok.value == "-":
                self.error("negative exponent")
            if self.tok.kind != "NUM":
                self.error("exponent must be a non-negative integer literal")
            base = base ** int(self.advance().value)
            if self.tok.kind == "OP" and self.tok.value == "^":
                self.error("chained exponents are ambiguous; use parentheses")
        return base

    def atom(self) -> MPoly:
        tok = self.tok
        if tok.kind == "NUM":
            self.advance()
            value = Fraction(int(tok.value))
            if self.accept("/"):
                if self.tok.kind != "NUM":
                    self.error("'/' is only allowed inside rational literals")
                den = int(self.advance().value)
                if den == 0:
                    self.error("zero denominator", tok)
                value /= den
            return self.ring.const(value)
        if tok.kind == "NAME":
            self.advance()
            if tok.value not in self.ring.names:
                self.error(f"unknown variable {tok.value!r}", tok)
            return self.ring.gens()[self.ring.index(tok.value)]
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return inner
        if tok.kind == "END":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok.value!r}")


def parse(text: str, ring: Ring) -> MPoly:
    return _Parser(text, ring).parse()
