"""A recursive-descent parser for integer polynomial expressions in t1, t2, ...

Grammar, loosest binding first::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)*
    atom   := INT | VAR | "(" expr ")"

so ``-t1^2`` is ``-(t1^2)``.  Exponents must be integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .multipoly import MultiPoly

MAX_EXPONENT = 10**4

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>t\d+)|(?P<op>[-+*^()])|(?P<bad>\S))")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise PolySyntaxError(f"unexpected character {m.group(kind)!r}", text, start)
        out.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.nvars = nvars

    def peek(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return PolySyntaxError(message, self.text, tok.pos)

    def expect_op(self, op):
        tok = self.peek()
        if tok.kind != "op" or tok.value != op:
            found = tok.value or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")
        return self.take()

    def parse(self) -> MultiPoly:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        out = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().value!r}")
        return out

    def expr(self):
        out = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek().kind == "op" and self.peek().value == "*":
            self.take()
            out = out * self.unary()
        return out

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok.value == "-" else inner
        return self.power()

    def power(self):
        out = self.atom()
        while self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                raise self.error("exponent must be a non-negative integer literal")
            self.take()
            e = int(tok.value)
            if e > MAX_EXPONENT:
                raise self.error(f"exponent {e} exceeds {MAX_EXPONENT}", tok)
            out = out**e
        return out

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return MultiPoly.constant(int(tok.value), self.nvars)
        if tok.kind == "var":
            i = int(tok.value[1:])
            if not 1 <= i <= self.nvars:
                raise self.error(f"variable {tok.value} outside t1..t{self.nvars}", tok)
            return MultiPoly.variable(i - 1, self.nvars)
        if tok.kind == "op" and tok.value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        found = tok.value or "end of input"
        raise self.error(f"unexpected {found!r}", tok)


def max_variable(text: str) -> int:
    """The largest index i such that t_i occurs in the text (0 if none)."""
    return max((int(t.value[1:]) for t in _tokenize(text) if t.kind == "var"), default=0)


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse ``text`` into a MultiPoly with ``nvars`` variables (default: the largest index used).

    >>> str(parse_poly("(t1+t2)^2"))
    't1^2 + 2*t1*t2 + t2^2'
    """
    if nvars is None:
        nvars = max(max_variable(text), 1)
    return _Parser(text, nvars).parse()


def parse_polys(texts: Sequence[str], nvars: int | None = None) -> list[MultiPoly]:
    """Parse several expressions into a common polynomial ring."""
    if nvars is None:
        nvars = max([max_variable(t) for t in texts] + [1])
    return [parse_poly(t, nvars) for t in texts]
