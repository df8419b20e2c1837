"""AST for complex-valued expressions in the single variable z.

Nodes are immutable; structural equality is the dataclass equality.
Pow exponents are plain integers (possibly negative), never subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass


class ExprNode:
    __slots__ = ()


@dataclass(frozen=True)
class Const(ExprNode):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var(ExprNode):
    pass


@dataclass(frozen=True)
class Add(ExprNode):
    left: ExprNode
    right: ExprNode


@dataclass(frozen=True)
class Sub(ExprNode):
    left: ExprNode
    right: ExprNode


@dataclass(frozen=True)
class Mul(ExprNode):
    left: ExprNode
    right: ExprNode


@dataclass(frozen=True)
class Div(ExprNode):
    left: ExprNode
    right: ExprNode


@dataclass(frozen=True)
class Neg(ExprNode):
    operand: ExprNode


@dataclass(frozen=True)
class Pow(ExprNode):
    base: ExprNode
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int):
            raise TypeError("Pow exponent must be an integer")


@dataclass(frozen=True)
class Exp(ExprNode):
    operand: ExprNode


@dataclass(frozen=True)
class Sin(ExprNode):
    operand: ExprNode


@dataclass(frozen=True)
class Cos(ExprNode):
    operand: ExprNode


Z = Var()
ZERO = Const(0.0)
ONE = Const(1.0)


def _fmt_real(x: float) -> str:
    if x < 0:
        return "-" + _fmt_real(-x)
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _fmt_const(c: complex) -> str:
    if c.imag == 0.0:
        return _fmt_real(c.real)
    if c == 1j:
        return "i"
    if c == -1j:
        return "-i"
    # general complex constants fall outside the grammar's literal forms;
    # emit a compositional spelling (parses back as a compound tree)
    if c.real == 0.0:
        return f"{_fmt_real(c.imag)}*i"
    op = "+" if c.imag > 0 else "-"
    return f"({_fmt_real(c.real)}{op}{_fmt_real(abs(c.imag))}*i)"


# precedence levels: 0 add/sub, 1 mul/div, 2 unary/pow, 3 atoms
def _prec(e: ExprNode) -> int:
    if isinstance(e, (Add, Sub)):
        return 0
    if isinstance(e, (Mul, Div)):
        return 1
    if isinstance(e, (Neg, Pow)):
        return 2
    if isinstance(e, Const):
        v = e.value
        if v.imag == 0.0 and v.real < 0:
            return 2  # prints with a leading minus
        if v == -1j or (v.imag != 0.0 and v != 1j):
            return 1  # prints as a product / parenthesized form
    return 3


def _wrap(e: ExprNode, min_prec: int) -> str:
    s = to_source(e)
    return f"({s})" if _prec(e) < min_prec else s


def to_source(e: ExprNode) -> str:
    """Pretty-print with minimal parentheses; parses back to the same tree."""
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Var):
        return "z"
    if isinstance(e, Add):
        return f"{_wrap(e.left, 0)} + {_wrap(e.right, 1)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, 0)} - {_wrap(e.right, 1)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, 1)}*{_wrap(e.right, 2)}"
    if isinstance(e, Div):
        return f"{_wrap(e.left, 1)}/{_wrap(e.right, 3)}"
    if isinstance(e, Neg):
        return f"-{_wrap(e.operand, 3)}"
    if isinstance(e, Pow):
        return f"{_wrap(e.base, 3)}^{e.exponent}"
    if isinstance(e, Exp):
        return f"exp({to_source(e.operand)})"
    if isinstance(e, Sin):
        return f"sin({to_source(e.operand)})"
    if isinstance(e, Cos):
        return f"cos({to_source(e.operand)})"
    raise TypeError(f"not an ExprNode: {e!r}")
