"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := INT ['/' INT] | VAR ['^' INT] | '(' expr ')' ['^' INT]
"""
from __future__ import annotations

import re
from fractions import Fraction

MAX_EXPONENT = 1 << 16

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("VAR", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def exponent(self):
        tok = self.take("INT")
        k = int(tok[1])
        if k == 0:
            raise ParseError("exponent must be positive", tok[2], self.text)
        if k > MAX_EXPONENT:
            raise ParseError(f"exponent overflow ({k} > {MAX_EXPONENT})", tok[2], self.text)
        return k

    def factor(self):
        kind, val, pos = self.peek()
        ring = self.ring
        if kind == "INT":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("INT")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("division by zero", den_tok[2], self.text)
                try:
                    return ring.const(Fraction(int(val), den))
                except ZeroDivisionError:
                    raise ParseError("denominator vanishes in the field", den_tok[2], self.text) from None
            return ring.const(int(val))
        if kind == "VAR":
            self.take()
            if val not in ring.variables:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            v = ring.var(val)
            if self.peek()[0] == "^":
                self.take()
                v = v ** self.exponent()
            return v
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            if self.peek()[0] == "^":
                self.take()
                inner = inner ** self.exponent()
            return inner
        what = "end of input" if kind == "EOF" else repr(val)
        raise ParseError(f"unexpected {what}", pos, self.text)


def parse_polynomial(text: str, ring):
    """Parse ``text`` into a canonical :class:`~gradecone.ring.Polynomial` of ``ring``."""
    p = _Parser(text, ring)
    if p.peek()[0] == "EOF":
        raise ParseError("empty expression", 0, text)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "EOF":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], text)
    return out
