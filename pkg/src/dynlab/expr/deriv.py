"""Symbolic differentiation with light constant folding.

Folding is deliberately limited to identities and annihilators
(0*x, x+0, x*1, double negation, constant negation) so derivative
trees stay readable.
"""

from __future__ import annotations

from .ast import (Add, Const, Cos, Div, Exp, ExprNode, Mul, Neg, Pow, Sin,
                  Sub, Var, ONE, ZERO)


def _is_const(e: ExprNode, value=None) -> bool:
    if not isinstance(e, Const):
        return False
    return value is None or e.value == complex(value)


def add(l: ExprNode, r: ExprNode) -> ExprNode:
    if _is_const(l, 0):
        return r
    if _is_const(r, 0):
        return l
    if isinstance(r, Neg):
        return Sub(l, r.operand)
    return Add(l, r)


def sub(l: ExprNode, r: ExprNode) -> ExprNode:
    if _is_const(r, 0):
        return l
    if _is_const(l, 0):
        return neg(r)
    return Sub(l, r)


def mul(l: ExprNode, r: ExprNode) -> ExprNode:
    if _is_const(l, 0) or _is_const(r, 0):
        return ZERO
    if _is_const(l, 1):
        return r
    if _is_const(r, 1):
        return l
    if _is_const(l, -1):
        return neg(r)
    if _is_const(r, -1):
        return neg(l)
    return Mul(l, r)


def div(l: ExprNode, r: ExprNode) -> ExprNode:
    if _is_const(l, 0):
        return ZERO
    if _is_const(r, 1):
        return l
    return Div(l, r)


def neg(e: ExprNode) -> ExprNode:
    if isinstance(e, Const):
        return Const(-e.value)
    if isinstance(e, Neg):
        return e.operand
    return Neg(e)


def powi(base: ExprNode, k: int) -> ExprNode:
    if k == 0:
        return ONE
    if k == 1:
        return base
    return Pow(base, k)


def differentiate(e: ExprNode) -> ExprNode:
    """d/dz of the expression."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Add):
        return add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Sub):
        return sub(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        return add(mul(differentiate(e.left), e.right),
                   mul(e.left, differentiate(e.right)))
    if isinstance(e, Div):
        num = sub(mul(differentiate(e.left), e.right),
                  mul(e.left, differentiate(e.right)))
        return div(num, powi(e.right, 2))
    if isinstance(e, Neg):
        return neg(differentiate(e.operand))
    if isinstance(e, Pow):
        inner = differentiate(e.base)
        return mul(Const(complex(e.exponent)),
                   mul(powi(e.base, e.exponent - 1), inner))
    if isinstance(e, Exp):
        return mul(Exp(e.operand), differentiate(e.operand))
    if isinstance(e, Sin):
        return mul(Cos(e.operand), differentiate(e.operand))
    if isinstance(e, Cos):
        return neg(mul(Sin(e.operand), differentiate(e.operand)))
    raise TypeError(f"not an ExprNode: {e!r}")
