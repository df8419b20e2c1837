"""Tree evaluation on the extended plane.

Delegates to the scalar kernel ops so tree evaluation, the pure-Python
grid kernel, and the compiled grid kernel all share one guard policy.
"""

from __future__ import annotations

from ..kernel import _ref as K
from ..sphere import XComplex
from .ast import (Add, Const, Cos, Div, Exp, ExprNode, Mul, Neg, Pow, Sin,
                  Sub, Var)

_STATE_OF = {0: "finite", 1: "inf", 2: "undef"}


def _to_triple(z) -> tuple:
    if isinstance(z, XComplex):
        if z.is_undefined:
            return 0.0, 0.0, K.ST_UNDEF
        if z.is_infinity:
            return 0.0, 0.0, K.ST_INF
        v = z.value
        return v.real, v.imag, K.ST_FINITE
    v = complex(z)
    return K._guard2(v.real, v.imag)


def _from_triple(t) -> XComplex:
    re, im, st = t
    if st == K.ST_UNDEF:
        return XComplex.UNDEFINED
    if st == K.ST_INF:
        return XComplex.INFINITY
    return XComplex.finite(complex(re, im))


def _eval_triple(e: ExprNode, zr: float, zi: float, zs: int) -> tuple:
    if isinstance(e, Const):
        return e.value.real, e.value.imag, K.ST_FINITE
    if isinstance(e, Var):
        return zr, zi, zs
    if isinstance(e, (Add, Sub, Mul, Div)):
        a = _eval_triple(e.left, zr, zi, zs)
        b = _eval_triple(e.right, zr, zi, zs)
        op = {Add: K.cx_add, Sub: K.cx_sub, Mul: K.cx_mul,
              Div: K.cx_div}[type(e)]
        return op(a[0], a[1], a[2], b[0], b[1], b[2])
    if isinstance(e, Neg):
        a = _eval_triple(e.operand, zr, zi, zs)
        return K.cx_neg(*a)
    if isinstance(e, Pow):
        a = _eval_triple(e.base, zr, zi, zs)
        return K.cx_powi(a[0], a[1], a[2], e.exponent)
    if isinstance(e, Exp):
        return K.cx_exp(*_eval_triple(e.operand, zr, zi, zs))
    if isinstance(e, Sin):
        return K.cx_sin(*_eval_triple(e.operand, zr, zi, zs))
    if isinstance(e, Cos):
        return K.cx_cos(*_eval_triple(e.operand, zr, zi, zs))
    raise TypeError(f"not an ExprNode: {e!r}")


def evaluate(e: ExprNode, z) -> XComplex:
    """Evaluate at z (complex or XComplex) under the sphere guard policy.

    Evaluation at infinity: z itself participates through the state
    machine, so exp/sin/cos of infinity and arithmetic on undefined
    inputs degrade exactly as the guards prescribe.
    """
    zr, zi, zs = _to_triple(z)
    return _from_triple(_eval_triple(e, zr, zi, zs))


def evaluate_c(e: ExprNode, z: complex):
    """Evaluate at finite z; returns a complex or None if not finite."""
    zr, zi, zs = _to_triple(z)
    re, im, st = _eval_triple(e, zr, zi, zs)
    if st != K.ST_FINITE:
        return None
    return complex(re, im)
