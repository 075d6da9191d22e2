"""Parsing of polynomials in the standard infix text format.

Grammar: `+`, `-`, explicit `*`, `^` for powers, parentheses, integer and
`p/q` rational literals, and declared variable names.  This is the format
used by problem files, serialized formulas and `Poly.__str__`.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactalg import Poly, VarSpace


class ParseError(ValueError):
    """Syntax error with a position for diagnostics."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, space: VarSpace, length: int):
        self.tokens = tokens
        self.space = space
        self.i = 0
        self.length = length

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.length)
        self.i += 1
        return tok

    def expr(self) -> Poly:
        node = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                node = node + rhs if tok[1] == "+" else node - rhs
            else:
                return node

    def term(self) -> Poly:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    node = node * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        raise ParseError("division only by nonzero constants", tok[2])
                    node = node.scale(1 / rhs.as_constant())
            else:
                return node

    def factor(self) -> Poly:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            f = self.factor()
            return f if tok[1] == "+" else -f
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            ex = self.take()
            if ex[0] != "num":
                raise ParseError("exponent must be a non-negative integer", ex[2])
            return base ** ex[1]
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok[0] == "num":
            return self.space.const(tok[1])
        if tok[0] == "name":
            try:
                return self.space.var(tok[1])
            except KeyError:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2]) from None
        if tok[0] == "op" and tok[1] == "(":
            node = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise ParseError("expected ')'", close[2])
            return node
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_poly(text: str, space: VarSpace) -> Poly:
    """Parse an infix polynomial over the declared variables."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    parser = _Parser(tokens, space, len(text))
    result = parser.expr()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"trailing input at {tok[1]!r}", tok[2])
    return result


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}", 0) from exc
