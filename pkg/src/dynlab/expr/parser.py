"""Recursive-descent parser for the expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('-')? base ('^' int)?
    base   := number | 'z' | 'pi' | 'e' | 'i' | ident '(' expr ')' | '(' expr ')'
    ident  in {exp, sin, cos}

`pi`, `e`, `i` are literal constants. Implicit multiplication is not
allowed. A unary minus applied directly to a constant folds into the
constant, so that printing round-trips structurally.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .ast import Add, Const, Cos, Div, Exp, ExprNode, Mul, Neg, Pow, Sin, Sub, Var


class ExprError(ValueError):
    """Base class for expression-source errors."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ExprSyntaxError(ExprError):
    def __init__(self, offset: int, expected: tuple, found: str):
        self.expected = tuple(expected)
        self.found = found
        exp = ", ".join(self.expected)
        super().__init__(f"expected {exp}, found {found!r}", offset)


class UnknownIdentifierError(ExprError):
    def __init__(self, name: str, offset: int):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset)


_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_INT = re.compile(r"-?\d+")

_FUNCTIONS = {"exp": Exp, "sin": Sin, "cos": Cos}
_CONSTANTS = {"pi": complex(math.pi), "e": complex(math.e), "i": 1j}


@dataclass
class _Token:
    kind: str  # 'num', 'ident', one of '+-*/^()', 'end'
    text: str
    offset: int


def _tokenize(src: str):
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            m = _NUMBER.match(src, pos)
            tokens.append(_Token("num", m.group(0), pos))
            pos = m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = _IDENT.match(src, pos)
            tokens.append(_Token("ident", m.group(0), pos))
            pos = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, pos))
            pos += 1
            continue
        raise ExprSyntaxError(pos, ("expression",), ch)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: tuple) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(tok.offset, expected, tok.text or "end of input")
        return self.advance()

    def parse(self) -> ExprNode:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(tok.offset, ("operator", "end of input"), tok.text)
        return node

    def expr(self) -> ExprNode:
        node = self.term()
        while self.peek().kind in "+-":
            op = self.advance().kind
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> ExprNode:
        node = self.factor()
        while self.peek().kind in "*/":
            op = self.advance().kind
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> ExprNode:
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        node = self.base()
        if self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            m = _INT.fullmatch(tok.text) if tok.kind == "num" else None
            if tok.kind == "-":
                # negative exponent: '-' digits
                self.advance()
                dig = self.expect("num", ("integer exponent",))
                if not dig.text.isdigit():
                    raise ExprSyntaxError(dig.offset, ("integer exponent",), dig.text)
                node = Pow(node, -int(dig.text))
            elif m is not None:
                self.advance()
                node = Pow(node, int(tok.text))
            else:
                raise ExprSyntaxError(tok.offset, ("integer exponent",),
                                      tok.text or "end of input")
        if negate:
            node = Const(-node.value) if isinstance(node, Const) else Neg(node)
        return node

    def base(self) -> ExprNode:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Const(complex(float(tok.text)))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "z":
                return Var()
            if tok.text in _CONSTANTS:
                return Const(_CONSTANTS[tok.text])
            if tok.text in _FUNCTIONS:
                self.expect("(", ("'('",))
                arg = self.expr()
                self.expect(")", ("')'",))
                return _FUNCTIONS[tok.text](arg)
            raise UnknownIdentifierError(tok.text, tok.offset)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", ("')'",))
            return node
        raise ExprSyntaxError(tok.offset, ("number", "'z'", "constant",
                                           "function", "'('"),
                              tok.text or "end of input")


def parse(src: str) -> ExprNode:
    """Parse expression source into an AST."""
    return _Parser(src).parse()
